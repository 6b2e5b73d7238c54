#include "bochner/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "bochner/clifford.hpp"
#include "bochner/linalg.hpp"

namespace bochner {

namespace {

// Relative spread tolerated when asserting |b_1| = ... = |b_m|.
constexpr double kBlockEqualityTol = 1e-6;

double rayleigh_factor(int q, int p) { return static_cast<double>(p) * (q - p); }

void check_bochner_degree(int q, int p, const char* op) {
  if (p < 1 || p > q - 1) {
    throw std::invalid_argument(std::string(op) + ": need 1 <= p <= q-1, got p=" +
                                std::to_string(p) + ", q=" + std::to_string(q));
  }
}

Form two_form(int q, int x, int y, double c = 1.0) {
  return Form::monomial(q, MultiIndex{std::min(x, y), std::max(x, y)}, x < y ? c : -c);
}

bool blocks_all_equal(const std::vector<double>& b) {
  if (b.empty()) return true;
  const auto [lo, hi] = std::minmax_element(b.begin(), b.end());
  return std::abs(*hi - *lo) <= kBlockEqualityTol * std::max(1.0, std::abs(*hi));
}

void fill_ext(BoundReport& r, const ONeillTensor& h, const CanonicalBlocks& blocks) {
  const int q = r.q;
  const int p = r.p;
  const double bm = blocks.b_max();
  r.b = blocks.b;
  r.bound_ext = -rayleigh_factor(q, p) * bm * bm;
  r.min_eig_ext = bochner_quadratic(r_ext_from_h(h), p).min_eigenvalue();
  r.equality_ext.margin = r.min_eig_ext - r.bound_ext;
  r.equality_ext.flag = r.equality_ext.margin <= equality_tolerance(r.bound_ext);
  r.ext_bound_holds = r.min_eig_ext >= r.bound_ext - kInequalitySlack;

  const int m = blocks.m();
  r.equality_condition_holds = true;
  if (r.equality_ext.flag && p <= m) {
    if (m > 1) {
      r.equality_condition_holds = blocks_all_equal(blocks.b);
    } else if (m == 1) {
      r.equality_condition_holds = std::abs(blocks.b[0]) <= kBlockEqualityTol;
    }
  }

  const FamilySpectrum fam = eigenfamilies(blocks);
  r.families_labeled = fam.labeled;
  r.families.clear();
  for (const auto& f : fam.pairs) r.families.push_back({f.label, f.eigenvalue});
}

}  // namespace

double equality_tolerance(double bound) {
  return bound == 0.0 ? 1e-12 : 1e-9 * std::abs(bound);
}

NormIdentity norm_identity_check(const Form& omega, double tol) {
  const int q = omega.q();
  const int p = omega.degree();
  NormIdentity out;
  for (int x = 1; x <= q; ++x) {
    for (int y = x + 1; y <= q; ++y) {
      out.lhs += bracket_two_form(Form::monomial(q, MultiIndex{x, y}), omega).norm_squared();
    }
  }
  out.lhs *= 0.25;
  out.rhs = rayleigh_factor(q, p) * omega.norm_squared();
  out.pass = std::abs(out.lhs - out.rhs) <= tol * std::max(1.0, out.rhs);
  return out;
}

BoundReport ext_bound_report(const ONeillTensor& h, int p) {
  check_bochner_degree(h.q(), p, "ext_bound_report");
  BoundReport r;
  r.q = h.q();
  r.p = p;
  fill_ext(r, h, canonical_form(h));
  return r;
}

BoundReport total_bound_report(const CurvatureOperator& r_res, const ONeillTensor& h, int p) {
  if (r_res.q() != h.q()) {
    throw std::invalid_argument("total_bound_report: R_res has q=" + std::to_string(r_res.q()) +
                                " but h has q=" + std::to_string(h.q()));
  }
  check_bochner_degree(h.q(), p, "total_bound_report");
  BoundReport r;
  r.q = h.q();
  r.p = p;
  const CanonicalBlocks blocks = canonical_form(h);
  fill_ext(r, h, blocks);

  const SymmetricEigen res = jacobi_eigen(r_res.mat());
  r.gamma0 = res.values.size() ? res.values(0) : 0.0;
  r.gamma1 = res.values.size() ? res.values(res.values.size() - 1) : 0.0;
  const double bm = blocks.b_max();
  r.bound_total = rayleigh_factor(r.q, p) * (r.gamma0 - bm * bm);
  r.min_eig_total = bochner_quadratic(split_curvature(r_res, h), p).min_eigenvalue();
  r.total_bound_holds = r.min_eig_total >= r.bound_total - kInequalitySlack;
  if (p <= r.q / 2) r.bound_lambda = lambda_bound(r.gamma0, -bm * bm, p, r.q);
  return r;
}

double lambda_bound(double gamma_m, double beta_m1, int p, int q) {
  if (p < 1 || p > q / 2) {
    throw std::invalid_argument("lambda_bound: need 1 <= p <= floor(q/2), got p=" +
                                std::to_string(p) + ", q=" + std::to_string(q));
  }
  return static_cast<double>(p) * (q - p + 1) * (gamma_m + beta_m1);
}

// ---------------------------------------------------------------------------
// Equality structure

EqualityStructureChecker::EqualityStructureChecker(int q, int p, int i, int j, double tol)
    : q_(q), p_(p), i_(i), j_(j), tol_(tol) {
  if (q < 4) throw std::invalid_argument("equality structure needs q >= 4");
  if (p < 0 || p > q) throw std::invalid_argument("equality structure: degree out of range");
  if (i < 1 || j <= i || j > q / 2) {
    throw std::invalid_argument("equality structure: need 1 <= i < j <= " + std::to_string(q / 2) +
                                ", got (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  const int a = 2 * i - 1, b = 2 * i, c = 2 * j - 1, d = 2 * j;
  generators_ = {two_form(q, a, c), two_form(q, b, d), two_form(q, a, d), two_form(q, b, c)};

  const Basis basis(q, p);
  const int n = basis.size();
  Eigen::MatrixXd stacked(4 * n, n);
  for (int col = 0; col < n; ++col) {
    const Form mono = Form::monomial(q, MultiIndex::from_mask(basis.mask(col)));
    for (int g = 0; g < 4; ++g) {
      stacked.block(g * n, col, n, 1) = bracket_two_form(generators_[static_cast<std::size_t>(g)], mono).as_vector();
    }
  }
  kernel_ = orthonormalize(nullspace(stacked, 1e-10));
}

EqualityStructure EqualityStructureChecker::check(const Form& omega) const {
  if (omega.q() != q_ || omega.degree() != p_) {
    throw std::invalid_argument("equality structure: form does not match the checker");
  }
  EqualityStructure out;
  out.i = i_;
  out.j = j_;
  const double scale = std::max(1.0, omega.norm());

  // Route (a): the four brackets.
  bool vanish = true;
  for (std::size_t g = 0; g < 4; ++g) {
    out.bracket_norms[g] = bracket_two_form(generators_[g], omega).norm();
    vanish = vanish && out.bracket_norms[g] <= tol_ * scale;
  }
  out.brackets_vanish = vanish;

  // Route (b): split the monomials by how they meet S = {2i-1, 2i, 2j-1, 2j}.
  const Mask s_mask = MultiIndex{2 * i_ - 1, 2 * i_, 2 * j_ - 1, 2 * j_}.mask();
  const Basis basis(q_, p_);
  out.omega2 = Form(q_, p_);
  out.omega1 = p_ >= 4 ? Form(q_, p_ - 4) : Form(q_, 0);
  std::vector<double> w1(static_cast<std::size_t>(out.omega1.dim()), 0.0);
  std::vector<double> w2(static_cast<std::size_t>(out.omega2.dim()), 0.0);
  double mixed = 0.0;
  const Basis rest_basis(q_, p_ >= 4 ? p_ - 4 : 0);
  for (int r = 0; r < basis.size(); ++r) {
    const double c = omega[r];
    if (c == 0.0) continue;
    const Mask mk = basis.mask(r);
    const Mask meet = mk & s_mask;
    if (meet == 0) {
      w2[static_cast<std::size_t>(r)] += c;
    } else if (meet == s_mask) {
      const Mask rest = mk & ~s_mask;
      // e_S ^ e_rest = sign * e_mk; the shuffle sign counts pairs (x in S, y in rest), x > y.
      int inversions = 0;
      for (Mask t = rest; t; t &= t - 1) {
        const int y = std::countr_zero(t);
        inversions += std::popcount(s_mask & ~((Mask{2} << y) - 1u));
      }
      const double sign = inversions % 2 == 0 ? 1.0 : -1.0;
      w1[static_cast<std::size_t>(rest_basis.rank(rest))] += sign * c;
    } else {
      mixed += c * c;
    }
  }
  out.omega1 = Form(q_, out.omega1.degree(), std::move(w1));
  out.omega2 = Form(q_, p_, std::move(w2));
  out.mixed_residual = std::sqrt(mixed);
  out.decomposable = out.mixed_residual <= tol_ * scale;

  Form rebuilt = out.omega2;
  if (p_ >= 4) {
    const Form vol = Form::monomial(q_, MultiIndex{2 * i_ - 1, 2 * i_, 2 * j_ - 1, 2 * j_});
    rebuilt += wedge(vol, out.omega1);
  }
  out.reconstruction_error = (rebuilt - omega).max_abs();
  double contraction = 0.0;
  for (int x : {2 * i_ - 1, 2 * i_, 2 * j_ - 1, 2 * j_}) {
    contraction = std::max(contraction, basis_interior(x, out.omega1).max_abs());
    contraction = std::max(contraction, basis_interior(x, out.omega2).max_abs());
  }
  out.contraction_residual = contraction;

  // Route (c): distance to the joint kernel.
  const Eigen::VectorXd v = omega.as_vector();
  const Eigen::VectorXd proj = kernel_ * (kernel_.transpose() * v);
  out.nullspace_residual = (v - proj).norm();
  out.in_nullspace = out.nullspace_residual <= tol_ * scale;
  return out;
}

EqualityStructure equality_structure_check(const Form& omega, int i, int j, double tol) {
  return EqualityStructureChecker(omega.q(), omega.degree(), i, j, tol).check(omega);
}

// ---------------------------------------------------------------------------
// Equality scan

std::string to_string(EqualityBranch b) {
  switch (b) {
    case EqualityBranch::NotAttained: return "not_attained";
    case EqualityBranch::NonvanishingBrackets: return "nonvanishing_brackets";
    case EqualityBranch::VanishingBrackets: return "vanishing_brackets";
    case EqualityBranch::SingleBlock: return "single_block";
    case EqualityBranch::Trivial: return "trivial";
  }
  return "?";
}

EqualityScan equality_scan(const ONeillTensor& h, int p, double tol) {
  const int q = h.q();
  check_bochner_degree(q, p, "equality_scan");
  EqualityScan out;
  out.report = ext_bound_report(h, p);

  const CanonicalBlocks blocks = canonical_form(h);
  const FormOperator b_ext = bochner_quadratic(r_ext_from_h(h), p);
  const SymmetricEigen eig = jacobi_eigen(b_ext.mat);
  out.minimizer = Form::from_vector(q, p, eig.vectors.col(0));
  const Eigen::MatrixXd to_frame = exterior_power(blocks.frame, p).transpose();
  out.minimizer_canonical = Form::from_vector(q, p, to_frame * eig.vectors.col(0));

  const int m = blocks.m();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Form& w = out.minimizer_canonical;
  bool any_vanishing = false;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const int a = 2 * i - 1, b = 2 * i, c = 2 * j - 1, d = 2 * j;
      PairDiagnosis diag;
      diag.i = i;
      diag.j = j;
      const Form ac = two_form(q, a, c, inv_sqrt2), bd = two_form(q, b, d, inv_sqrt2);
      const Form ad = two_form(q, a, d, inv_sqrt2), bc = two_form(q, b, c, inv_sqrt2);
      diag.theta_plus = bracket_two_form(ac + bd, w).norm();
      diag.theta_minus = bracket_two_form(ac - bd, w).norm();
      diag.rho_plus = bracket_two_form(ad + bc, w).norm();
      diag.rho_minus = bracket_two_form(ad - bc, w).norm();
      diag.vanishing = std::max({diag.theta_plus, diag.theta_minus, diag.rho_plus, diag.rho_minus}) <= tol;
      if (diag.vanishing) {
        any_vanishing = true;
        diag.structure = equality_structure_check(w, i, j, std::max(tol, 1e-10));
        out.consistent = out.consistent && diag.structure->consistent() && diag.structure->decomposable;
      }
      out.pairs.push_back(std::move(diag));
    }
  }

  if (!out.report.equality_ext.flag) {
    out.branch = EqualityBranch::NotAttained;
  } else if (m == 0) {
    out.branch = EqualityBranch::Trivial;
  } else if (m == 1) {
    out.branch = EqualityBranch::SingleBlock;
  } else {
    out.branch = any_vanishing ? EqualityBranch::VanishingBrackets
                               : EqualityBranch::NonvanishingBrackets;
  }
  out.consistent = out.consistent && out.report.equality_condition_holds;
  return out;
}

}  // namespace bochner
