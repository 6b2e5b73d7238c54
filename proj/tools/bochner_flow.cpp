#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bochner/bounds.hpp"
#include "bochner/models.hpp"
#include "bochner/serialize.hpp"
#include "suites.hpp"
#include "support.hpp"

using namespace bochner;
using bochner::tool::format_double;
using bochner::tool::render_json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "json";
  std::string out;
};

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write the report here instead of standard output");
}

void emit(const Output& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot open --out path " + o.out);
  f << text;
}

std::string join(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_double(v[i]);
  }
  return s;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

ONeillTensor blocks_for(int q, const std::vector<double>& b) {
  if (q < 2) throw UsageError("--q must be >= 2");
  if (static_cast<int>(b.size()) != q / 2) {
    throw UsageError("--b needs floor(q/2) = " + std::to_string(q / 2) + " values, got " + std::to_string(b.size()));
  }
  return ONeillTensor::from_blocks(b, q);
}

void check_degree(int q, int p) {
  if (p < 1 || p > q - 1) throw UsageError("--p must lie in 1..q-1, got " + std::to_string(p));
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  int q_max = 6;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  Output out;
};

int cmd_verify(const VerifyArgs& a) {
  if (!tool::is_suite(a.suite)) throw UsageError("unknown suite '" + a.suite + "'");
  if (a.q_max < 2 || a.q_max > 10) throw UsageError("--q-max must lie in 2..10");
  if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");
  tool::SuiteConfig cfg;
  cfg.q_max = a.q_max;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  cfg.workers = tool::worker_count();
  const auto cases = tool::run_suite(a.suite, cfg);
  int passed = 0;
  for (const auto& c : cases) passed += c.pass;
  const bool ok = passed == static_cast<int>(cases.size());

  if (a.out.format == "csv") {
    std::ostringstream s;
    s << "suite,case,q,p,residual,tol,pass\n";
    for (const auto& c : cases) {
      s << c.suite << ',' << c.name << ',' << c.q << ',' << c.p << ',' << format_double(c.residual) << ','
        << format_double(c.tol) << ',' << csv_bool(c.pass) << '\n';
    }
    emit(a.out, s.str());
  } else {
    Json j;
    j["command"] = "verify";
    j["suite"] = a.suite;
    j["q_max"] = a.q_max;
    j["seed"] = a.seed;
    j["tol"] = a.tol;
    Json arr = Json::array();
    for (const auto& c : cases) {
      Json cj;
      cj["suite"] = c.suite;
      cj["case"] = c.name;
      cj["q"] = c.q;
      cj["p"] = c.p;
      cj["residual"] = c.residual;
      cj["tol"] = c.tol;
      cj["pass"] = c.pass;
      arr.push_back(std::move(cj));
    }
    j["cases"] = std::move(arr);
    j["summary"] = Json{{"total", cases.size()}, {"passed", passed}, {"failed", static_cast<int>(cases.size()) - passed}};
    emit(a.out, render_json(j));
  }
  return ok ? kOk : kCheckFailed;
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumArgs {
  int q = 0;
  std::vector<double> b;
  int p = 0;
  double gamma0 = 0.0;
  Output out;
};

std::string csv_header() {
  return "q,p,gamma0,gamma1,b,bound_ext,bound_total,bound_lambda,min_eig_ext,min_eig_total,equality_flag,"
         "equality_margin\n";
}

std::string csv_row(const BoundReport& r) {
  std::ostringstream s;
  s << r.q << ',' << r.p << ',' << format_double(r.gamma0) << ',' << format_double(r.gamma1) << ','
    << join(r.b, ';') << ',' << format_double(r.bound_ext) << ',' << format_double(r.bound_total) << ','
    << (r.bound_lambda ? format_double(*r.bound_lambda) : "") << ',' << format_double(r.min_eig_ext) << ','
    << format_double(r.min_eig_total) << ',' << csv_bool(r.equality_ext.flag) << ','
    << format_double(r.equality_ext.margin) << '\n';
  return s.str();
}

int cmd_spectrum(const SpectrumArgs& a) {
  const ONeillTensor h = blocks_for(a.q, a.b);
  const CurvatureOperator res = CurvatureOperator::scaled_identity(a.q, a.gamma0);
  std::vector<int> degrees;
  if (a.p != 0) {
    check_degree(a.q, a.p);
    degrees.push_back(a.p);
  } else {
    for (int p = 1; p < a.q; ++p) degrees.push_back(p);
  }
  std::vector<BoundReport> reports;
  bool ok = true;
  for (int p : degrees) {
    reports.push_back(total_bound_report(res, h, p));
    ok = ok && reports.back().ok();
  }
  if (a.out.format == "csv") {
    std::string s = csv_header();
    for (const auto& r : reports) s += csv_row(r);
    emit(a.out, s);
  } else if (reports.size() == 1) {
    emit(a.out, render_json(to_json(reports.front())));
  } else {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    emit(a.out, render_json(arr));
  }
  return ok ? kOk : kCheckFailed;
}

// --- bound -------------------------------------------------------------------

struct BoundArgs {
  int q = 0;
  int p = 0;
  double gamma0 = 0.0;
  std::vector<double> b;
  Output out;
};

int cmd_bound(const BoundArgs& a) {
  blocks_for(a.q, a.b);
  if (a.p < 1 || a.p > a.q / 2) throw UsageError("--p must lie in 1..floor(q/2), got " + std::to_string(a.p));
  double bm = 0.0;
  for (double x : a.b) bm = std::max(bm, std::abs(x));
  const double beta = -bm * bm;
  const double value = lambda_bound(a.gamma0, beta, a.p, a.q);
  if (a.out.format == "csv") {
    emit(a.out, "q,p,gamma_M,beta_M1,lambda_bound\n" + std::to_string(a.q) + ',' + std::to_string(a.p) + ',' +
                    format_double(a.gamma0) + ',' + format_double(beta) + ',' + format_double(value) + '\n');
  } else {
    Json j;
    j["q"] = a.q;
    j["p"] = a.p;
    j["gamma_M"] = a.gamma0;
    j["beta_M1"] = beta;
    j["lambda_bound"] = value;
    emit(a.out, render_json(j));
  }
  return kOk;
}

// --- model -------------------------------------------------------------------

struct ModelArgs {
  std::string name;
  int m = 0;
  int n = 0;
  int q = 0;
  double gamma0 = 1.0;
  int p = 2;
  Output out;
};

int cmd_model(const ModelArgs& a) {
  const auto name = parse_model_name(a.name);
  if (!name) throw UsageError("unknown model '" + a.name + "'");
  ModelFlow mf;
  switch (*name) {
    case ModelName::Constant:
      if (a.q == 0) throw UsageError("constant needs --q");
      mf = constant_curvature(a.q, a.gamma0);
      break;
    case ModelName::SphereMinimal:
      if (a.n == 0) throw UsageError("sphere_minimal needs --n");
      mf = sphere_minimal(a.n);
      break;
    default:
      mf = make_model(*name, a.m);
  }
  check_degree(mf.q, a.p);
  const BoundReport rep = total_bound_report(mf.r_res, mf.h, a.p);
  const bool ok = mf.self_check_passed() && rep.ok();
  if (a.out.format == "csv") {
    std::ostringstream s;
    s << "name,expected,computed,source,tol,pass\n";
    for (const auto& e : mf.expected) {
      s << e.name << ',' << format_double(e.expected) << ',' << format_double(e.computed) << ',' << e.source << ','
        << format_double(e.tol) << ',' << csv_bool(e.pass) << '\n';
    }
    emit(a.out, s.str());
  } else {
    Json j;
    j["model"] = to_json(mf);
    j["report"] = to_json(rep);
    if (const Form* omega = mf.test_form("kahler")) {
      const double quotient = bochner_quadratic(split_curvature(mf.r_res, mf.h), a.p).rayleigh(*omega);
      j["kahler_rayleigh"] = a.p == 2 ? Json(quotient) : Json(nullptr);
      j["strict_margin"] = rep.min_eig_total - rep.bound_total;
    }
    emit(a.out, render_json(j));
  }
  return ok ? kOk : kCheckFailed;
}

// --- equality-scan -----------------------------------------------------------

struct ScanArgs {
  int q = 0;
  std::vector<double> b;
  int p = 0;
  double tol = 1e-9;
  Output out;
};

int cmd_equality_scan(const ScanArgs& a) {
  const ONeillTensor h = blocks_for(a.q, a.b);
  check_degree(a.q, a.p);
  if (!(a.tol > 0.0)) throw UsageError("--tol must be positive");
  const EqualityScan scan = equality_scan(h, a.p, a.tol);
  if (a.out.format == "csv") {
    std::ostringstream s;
    s << "i,j,theta_plus,theta_minus,rho_plus,rho_minus,vanishing,structure_consistent\n";
    for (const auto& d : scan.pairs) {
      s << d.i << ',' << d.j << ',' << format_double(d.theta_plus) << ',' << format_double(d.theta_minus) << ','
        << format_double(d.rho_plus) << ',' << format_double(d.rho_minus) << ',' << csv_bool(d.vanishing) << ','
        << (d.structure ? csv_bool(d.structure->consistent()) : "") << '\n';
    }
    emit(a.out, s.str());
  } else {
    emit(a.out, render_json(to_json(scan)));
  }
  return scan.consistent && scan.report.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bochner operator checks for Riemannian flows"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run seeded invariant suites");
  verify->add_option("--suite", va.suite, "clifford-identities | norm-identity | bochner-equivalence | "
                                          "family-spectrum | bounds | all")->required();
  verify->add_option("--q-max", va.q_max, "largest rank q");
  verify->add_option("--seed", va.seed, "generator seed");
  verify->add_option("--tol", va.tol, "residual tolerance");
  add_output(verify, va.out);

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "bound report for R_res = gamma0 Id and canonical b");
  spectrum->add_option("--q", sa.q)->required();
  spectrum->add_option("--b", sa.b, "comma separated block values")->delimiter(',')->required();
  spectrum->add_option("--p", sa.p, "form degree; all degrees when omitted");
  spectrum->add_option("--gamma0", sa.gamma0);
  add_output(spectrum, sa.out);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "first-eigenvalue estimate p(q-p+1)(gamma_M - b_m^2)");
  bound->add_option("--q", ba.q)->required();
  bound->add_option("--p", ba.p)->required();
  bound->add_option("--gamma0", ba.gamma0, "gamma_M");
  bound->add_option("--b", ba.b, "comma separated block values")->delimiter(',')->required();
  add_output(bound, ba.out);

  ModelArgs ma;
  auto* model = app.add_subcommand("model", "build a named model flow and report on it");
  model->add_option("name", ma.name, "constant | hopf | tilted_product | strict_product | sphere_minimal")->required();
  model->add_option("--m", ma.m);
  model->add_option("--n", ma.n, "sphere dimension for sphere_minimal");
  model->add_option("--q", ma.q, "rank for constant");
  model->add_option("--gamma0", ma.gamma0, "curvature for constant");
  model->add_option("--p", ma.p);
  add_output(model, ma.out);

  ScanArgs ea;
  auto* scan = app.add_subcommand("equality-scan", "equality diagnosis for the minimizer of B_ext");
  scan->add_option("--q", ea.q)->required();
  scan->add_option("--b", ea.b, "comma separated block values")->delimiter(',')->required();
  scan->add_option("--p", ea.p)->required();
  scan->add_option("--tol", ea.tol);
  add_output(scan, ea.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*spectrum) return cmd_spectrum(sa);
    if (*bound) return cmd_bound(ba);
    if (*model) return cmd_model(ma);
    if (*scan) return cmd_equality_scan(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
