#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bochner/curvature.hpp"
#include "bochner/exterior.hpp"

namespace bochner {

/// Slack allowed when asserting min_eig >= bound.
inline constexpr double kInequalitySlack = 1e-9;

/// Tolerance for "bound attained": relative 1e-9 of the bound, or 1e-12 when
/// the bound is exactly zero.
double equality_tolerance(double bound);

struct NormIdentity {
  double lhs = 0.0;  // 1/4 sum_r |[psi_r, w]|^2
  double rhs = 0.0;  // p (q - p) |w|^2
  bool pass = false;
};

NormIdentity norm_identity_check(const Form& omega, double tol = 1e-10);

struct EqualityFlag {
  bool flag = false;
  double margin = 0.0;  // min_eig - bound
};

struct FamilySummary {
  FamilyType label;
  double eigenvalue;
};

struct BoundReport {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  int q = 0;
  int p = 0;
  double gamma0 = kUnset;
  double gamma1 = kUnset;
  std::vector<double> b;
  double bound_ext = kUnset;
  double bound_total = kUnset;
  std::optional<double> bound_lambda;
  double min_eig_ext = kUnset;
  double min_eig_total = kUnset;
  EqualityFlag equality_ext;
  bool families_labeled = true;
  std::vector<FamilySummary> families;

  bool ext_bound_holds = true;
  bool total_bound_holds = true;
  /// When equality is flagged for p <= m: all |b_i| equal (m > 1) or b_1 = 0
  /// (m = 1). False means equality was flagged without that block condition.
  bool equality_condition_holds = true;

  bool ok() const { return ext_bound_holds && total_bound_holds && equality_condition_holds; }
};

/// Lower bound -p(q-p) b_m^2 for B_ext and the smallest eigenvalue of
/// B_ext = bochner_quadratic(r_ext_from_h(h), p).
BoundReport ext_bound_report(const ONeillTensor& h, int p);

/// Adds the restriction part: bound p(q-p)(gamma0 - b_m^2) against the
/// smallest eigenvalue of the Bochner operator of R_res + R_ext.
BoundReport total_bound_report(const CurvatureOperator& r_res, const ONeillTensor& h, int p);

/// p (q - p + 1)(gamma_M + beta_M1), valid for 1 <= p <= floor(q/2).
double lambda_bound(double gamma_m, double beta_m1, int p, int q);

// ---------------------------------------------------------------------------
// Equality structure

struct EqualityStructure {
  int i = 0;
  int j = 0;
  /// |[e_{2i-1}^e_{2j-1}, w]|, |[e_{2i}^e_{2j}, w]|, |[e_{2i-1}^e_{2j}, w]|,
  /// |[e_{2i}^e_{2j-1}, w]|
  std::array<double, 4> bracket_norms{};
  bool brackets_vanish = false;

  /// w = e_{2i-1}^e_{2i}^e_{2j-1}^e_{2j}^w1 + w2 with w1, w2 free of those
  /// four directions.
  bool decomposable = false;
  Form omega1;  // degree p - 4, or the zero scalar when p < 4
  Form omega2;
  double mixed_residual = 0.0;         // norm of the monomials that fit neither part
  double reconstruction_error = 0.0;   // max |w - (e_S ^ w1 + w2)|
  double contraction_residual = 0.0;   // max over the four e_x -| w1, e_x -| w2

  /// Membership in the joint kernel of the four bracket operators.
  bool in_nullspace = false;
  double nullspace_residual = 0.0;

  bool consistent() const {
    return brackets_vanish == in_nullspace && decomposable == in_nullspace;
  }
};

/// Reusable checker for one (q, p, i, j); caches the joint kernel of the four
/// bracket operators.
class EqualityStructureChecker {
 public:
  /// Block indices are 1-based with 1 <= i < j <= floor(q/2); q >= 4.
  EqualityStructureChecker(int q, int p, int i, int j, double tol = 1e-10);

  EqualityStructure check(const Form& omega) const;

  int nullity() const { return static_cast<int>(kernel_.cols()); }

 private:
  int q_;
  int p_;
  int i_;
  int j_;
  double tol_;
  std::array<Form, 4> generators_;
  Eigen::MatrixXd kernel_;  // orthonormal columns
};

/// omega expressed in the canonical frame of h.
EqualityStructure equality_structure_check(const Form& omega, int i, int j, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Equality scan over block pairs for the minimizer of B_ext

struct PairDiagnosis {
  int i = 0;
  int j = 0;
  double theta_plus = 0.0;  // |[theta_ij^+, w]|
  double theta_minus = 0.0;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  bool vanishing = false;
  std::optional<EqualityStructure> structure;
};

enum class EqualityBranch {
  NotAttained,          // min_eig_ext above the bound
  NonvanishingBrackets, // every (i, j) keeps a nonzero bracket: forces |b_i| equal
  VanishingBrackets,    // some (i, j) has all four brackets zero
  SingleBlock,          // m = 1: forces b_1 = 0
  Trivial,              // m = 0, B_ext = 0
};

std::string to_string(EqualityBranch b);

struct EqualityScan {
  BoundReport report;
  Form minimizer;           // unit eigenform of the smallest eigenvalue, original frame
  Form minimizer_canonical; // the same form in the canonical frame of h
  EqualityBranch branch = EqualityBranch::NotAttained;
  std::vector<PairDiagnosis> pairs;
  bool consistent = true;   // all structure checks agree and the block condition holds
};

EqualityScan equality_scan(const ONeillTensor& h, int p, double tol = 1e-9);

}  // namespace bochner
