#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bochner/bounds.hpp"
#include "bochner/clifford.hpp"
#include "bochner/curvature.hpp"
#include "bochner/linalg.hpp"
#include "support.hpp"

namespace bochner::tool {

namespace {

using CaseFn = std::function<CaseResult(CounterRng&)>;

double inf_norm(const Eigen::MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

CaseResult result(std::string name, int q, int p, double residual, double tol) {
  CaseResult r;
  r.name = std::move(name);
  r.q = q;
  r.p = p;
  r.residual = residual;
  r.tol = tol;
  r.pass = std::isfinite(residual) && residual <= tol;
  return r;
}

double multivector_gap(const Multivector& a, const Multivector& b) { return (a - b).max_abs(); }

// --- clifford-identities ---------------------------------------------------

void clifford_cases(const SuiteConfig& cfg, std::vector<CaseFn>& out) {
  const double tol = cfg.tol;
  for (int q = 2; q <= cfg.q_max; ++q) {
    for (int k = 0; k < 4; ++k) {
      out.push_back([q, tol](CounterRng& rng) {
        const Form x = rng.form(q, 1), y = rng.form(q, 1);
        Multivector s = clifford_left(x, y) + clifford_left(y, x);
        s += Form::scalar(q, 2.0 * inner(x, y));
        return result("anticommutation", q, 1, s.max_abs(), tol);
      });
      const int p = k % (q + 1);
      out.push_back([q, p, tol](CounterRng& rng) {
        const Form psi = rng.form(q, 2), w = rng.form(q, p);
        const Multivector full = lie_bracket(psi, w);
        double off = 0.0;
        for (const auto& [d, f] : full.parts())
          if (d != p) off = std::max(off, f.max_abs());
        const double diff = (full.component(p) - bracket_two_form(psi, w)).max_abs();
        return result("bracket_degree", q, p, std::max(off, diff), tol);
      });
      const int pw = k % q;
      out.push_back([q, pw, tol](CounterRng& rng) {
        const Form psi = rng.form(q, 2), x = rng.form(q, 1), w = rng.form(q, pw);
        Multivector rhs = clifford_left(x, lie_bracket(psi, w));
        rhs += 2.0 * clifford_product(interior(x, psi), Multivector(w));
        if (pw > 0) rhs += lie_bracket(psi, interior(x, w));
        return result("bracket_wedge", q, pw, multivector_gap(lie_bracket(psi, wedge(x, w)), rhs), tol);
      });
    }
  }
}

// --- norm-identity ---------------------------------------------------------

void norm_cases(const SuiteConfig& cfg, std::vector<CaseFn>& out) {
  const double tol = cfg.tol;
  for (int q = 2; q <= cfg.q_max; ++q) {
    for (int p = 0; p <= q; ++p) {
      for (int k = 0; k < 3; ++k) {
        out.push_back([q, p, tol](CounterRng& rng) {
          const auto r = norm_identity_check(rng.form(q, p), tol);
          return result("norm_identity", q, p, std::abs(r.lhs - r.rhs) / std::max(1.0, r.rhs), tol);
        });
      }
    }
  }
}

// --- bochner-equivalence ---------------------------------------------------

void bochner_cases(const SuiteConfig& cfg, std::vector<CaseFn>& out) {
  const double tol = cfg.tol;
  for (int q = 2; q <= std::min(cfg.q_max, 7); ++q) {
    for (int p = 1; p < q; ++p) {
      for (int k = 0; k < 2; ++k) {
        out.push_back([q, p, tol](CounterRng& rng) {
          const CurvatureOperator r(q, rng.symmetric(static_cast<int>(binomial(q, 2))));
          return result("direct_vs_quadratic", q, p,
                        inf_norm(bochner_direct(r, p).mat - bochner_quadratic(r, p).mat), tol);
        });
      }
      out.push_back([q, p, tol](CounterRng& rng) {
        const double gamma = rng.uniform(-2.0, 2.0);
        const FormOperator b = bochner_quadratic(CurvatureOperator::scaled_identity(q, gamma), p);
        const Eigen::MatrixXd want = gamma * p * (q - p) * Eigen::MatrixXd::Identity(b.mat.rows(), b.mat.cols());
        return result("constant_curvature", q, p, inf_norm(b.mat - want), tol);
      });
    }
  }
}

// --- family-spectrum -------------------------------------------------------

void family_cases(const SuiteConfig& cfg, std::vector<CaseFn>& out) {
  for (int q = 2; q <= cfg.q_max; ++q) {
    for (int k = 0; k < 3; ++k) {
      out.push_back([q](CounterRng& rng) {
        const auto b = rng.blocks(q / 2, 0.1, 2.0);
        const auto h = ONeillTensor::from_blocks(b, q);
        const auto fam = eigenfamilies(canonical_form(h)).eigenvalues_sorted();
        const Eigen::VectorXd ev = jacobi_eigen(r_ext_from_h(h).mat()).values;
        double gap = fam.size() == static_cast<std::size_t>(ev.size()) ? 0.0 : INFINITY;
        for (std::size_t i = 0; i < fam.size() && std::isfinite(gap); ++i)
          gap = std::max(gap, std::abs(fam[i] - ev(static_cast<Eigen::Index>(i))));
        return result("family_spectrum", q, 2, gap, 1e-9);
      });
      out.push_back([q](CounterRng& rng) {
        const auto b = rng.blocks(q / 2, -2.0, 2.0);
        const double neg = std::max(0.0, -min_eigenvalue(type_three_matrix(b)));
        return result("type_three_psd", q, 2, neg, 1e-12);
      });
      out.push_back([q](CounterRng& rng) {
        const auto b = rng.blocks(q / 2, 0.0, 2.0);
        double s = 0.0;
        for (double x : b) s += x * x;
        const double tr = r_ext_from_h(ONeillTensor::from_blocks(b, q)).mat().trace();
        return result("r_ext_trace", q, 2, std::abs(tr - 3.0 * s), 1e-9);
      });
    }
  }
}

// --- bounds ----------------------------------------------------------------

void bound_cases(const SuiteConfig& cfg, std::vector<CaseFn>& out) {
  for (int q = 2; q <= cfg.q_max; ++q) {
    const int n = static_cast<int>(binomial(q, 2));
    for (int p = 1; p < q; ++p) {
      for (int k = 0; k < 2; ++k) {
        out.push_back([q, p, n](CounterRng& rng) {
          const CurvatureOperator res(q, rng.symmetric(n));
          const ONeillTensor h(q, rng.skew(q));
          const auto r = total_bound_report(res, h, p);
          const double viol = std::max({0.0, r.bound_ext - r.min_eig_ext, r.bound_total - r.min_eig_total});
          return result("combined_bound", q, p, viol, kInequalitySlack);
        });
        out.push_back([q, p, n](CounterRng& rng) {
          const CurvatureOperator res(q, rng.symmetric(n));
          const Eigen::VectorXd g = jacobi_eigen(res.mat()).values;
          const Eigen::VectorXd b = jacobi_eigen(bochner_quadratic(res, p).mat).values;
          const double c = p * (q - p);
          const double viol = std::max({0.0, c * g(0) - b(0), b(b.size() - 1) - c * g(g.size() - 1)});
          return result("restriction_sandwich", q, p, viol, kInequalitySlack);
        });
      }
    }
    const int m = q / 2;
    if (m > 1) {
      for (int p = 1; p <= m; ++p) {
        out.push_back([q, p, m](CounterRng& rng) {
          auto b = rng.blocks(m, 0.2, 1.5);
          b.back() = std::max(b.back(), 1.1 * b[static_cast<std::size_t>(m - 2)]) + 0.05;
          const auto r = ext_bound_report(ONeillTensor::from_blocks(b, q), p);
          // residual is positive when the margin is not strictly positive
          return result("separated_strict", q, p, r.equality_ext.flag ? 1.0 : 0.0, 0.0);
        });
      }
    } else {
      out.push_back([q](CounterRng& rng) {
        const double b1 = rng.uniform(0.2, 2.0);
        const auto r = ext_bound_report(ONeillTensor::from_blocks(std::vector<double>{b1}, q), 1);
        return result("single_block_strict", q, 1, r.equality_ext.flag ? 1.0 : 0.0, 0.0);
      });
    }
  }
}

using Builder = void (*)(const SuiteConfig&, std::vector<CaseFn>&);

struct SuiteDef {
  const char* name;
  Builder build;
  std::uint64_t stream_base;
};

const SuiteDef kSuites[] = {
    {"clifford-identities", clifford_cases, 1ULL << 40},
    {"norm-identity", norm_cases, 2ULL << 40},
    {"bochner-equivalence", bochner_cases, 3ULL << 40},
    {"family-spectrum", family_cases, 4ULL << 40},
    {"bounds", bound_cases, 5ULL << 40},
};

std::vector<CaseResult> run_one(const SuiteDef& def, const SuiteConfig& cfg) {
  std::vector<CaseFn> cases;
  def.build(cfg, cases);
  const std::function<CaseResult(int)> task = [&](int i) {
    CounterRng rng(cfg.seed, def.stream_base + static_cast<std::uint64_t>(i));
    CaseResult r = cases[static_cast<std::size_t>(i)](rng);
    r.suite = def.name;
    return r;
  };
  return parallel_map<CaseResult>(static_cast<int>(cases.size()), cfg.workers, task);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::vector<CaseResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
  std::vector<CaseResult> out;
  for (const auto& def : kSuites) {
    if (name != "all" && name != def.name) continue;
    auto part = run_one(def, cfg);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace bochner::tool
