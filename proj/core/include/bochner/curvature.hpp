#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bochner/exterior.hpp"

namespace bochner {

/// Symmetric operator on Lambda^2(R^q) in the lexicographic basis, with
/// <R(e_a ^ e_b), e_c ^ e_d> = g(R(e_a, e_b) e_c, e_d).
class CurvatureOperator {
 public:
  static constexpr double kSymmetryTol = 1e-12;

  CurvatureOperator() = default;
  /// Throws std::invalid_argument if mat is not C(q,2) square or not symmetric
  /// to kSymmetryTol. The stored matrix is symmetrized exactly.
  CurvatureOperator(int q, Eigen::MatrixXd mat);

  static CurvatureOperator zero(int q);
  static CurvatureOperator scaled_identity(int q, double gamma);

  int q() const { return q_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& mat() const { return mat_; }

  /// <R(e_a ^ e_b), e_c ^ e_d> for 0-based frame indices, antisymmetric in
  /// each pair.
  double entry(int a, int b, int c, int d) const;

  friend CurvatureOperator operator+(const CurvatureOperator& x, const CurvatureOperator& y);

 private:
  int q_ = 0;
  Eigen::MatrixXd mat_;
};

/// O'Neill tensor h, a skew-symmetric endomorphism of Q. mat(i, j) is the i-th
/// component of h(e_j), so g(h(X), Y) = Y^T mat X.
class ONeillTensor {
 public:
  static constexpr double kSkewTol = 1e-12;

  ONeillTensor() = default;
  ONeillTensor(int q, Eigen::MatrixXd mat);

  static ONeillTensor zero(int q);
  /// Canonical block matrix: h(e_{2i-1}) = b_i e_{2i}, h(e_{2i}) = -b_i e_{2i-1},
  /// with the kernel direction last when q is odd. Requires b.size() == q / 2.
  static ONeillTensor from_blocks(std::span<const double> b, int q);

  int q() const { return q_; }
  const Eigen::MatrixXd& mat() const { return mat_; }
  /// g(h(e_x), e_y), 0-based.
  double g(int x, int y) const { return mat_(y, x); }

 private:
  int q_ = 0;
  Eigen::MatrixXd mat_;
};

/// Skew-normal form of h: frame columns e_1..e_q satisfy
/// h(e_{2i-1}) = b_i e_{2i} and h(e_{2i}) = -b_i e_{2i-1}, b ascending and
/// nonnegative; for odd q the last column spans a kernel direction.
struct CanonicalBlocks {
  int q = 0;
  std::vector<double> b;
  Eigen::MatrixXd frame;
  int kernel_dim = 0;

  int m() const { return static_cast<int>(b.size()); }
  double b_max() const { return b.empty() ? 0.0 : b.back(); }
  /// The block matrix of h in the canonical frame.
  Eigen::MatrixXd block_matrix() const;
  /// frame * block_matrix * frame^T.
  Eigen::MatrixXd reconstruct() const;
};

enum class FamilyType { I, II, III, IV, Numeric };

std::string to_string(FamilyType t);

struct EigenFamily {
  FamilyType label;
  double eigenvalue;
  Form eigenvector;  // degree 2, in the original (non-canonical) frame
};

struct FamilySpectrum {
  /// False when h has a kernel of dimension > 1; the pairs then come from a
  /// numeric eigendecomposition and carry FamilyType::Numeric.
  bool labeled = true;
  std::vector<EigenFamily> pairs;

  std::vector<double> eigenvalues_sorted() const;
};

/// Operator on Lambda^p(R^q).
struct FormOperator {
  int q = 0;
  int p = 0;
  Eigen::MatrixXd mat;

  Form apply(const Form& omega) const;
  /// <B w, w> / |w|^2.
  double rayleigh(const Form& omega) const;
  double min_eigenvalue() const;
};

CurvatureOperator r_ext_from_h(const ONeillTensor& h);

/// Transverse curvature R = R_res + R_ext(h).
CurvatureOperator split_curvature(const CurvatureOperator& r_res, const ONeillTensor& h);

CanonicalBlocks canonical_form(const ONeillTensor& h);

/// Gram matrix of R_ext restricted to span{e_{2k-1} ^ e_{2k}}:
/// D_kk = 3 b_k^2, D_kl = 2 b_k b_l.
Eigen::MatrixXd type_three_matrix(std::span<const double> b);

FamilySpectrum eigenfamilies(const CanonicalBlocks& blocks);

/// Bochner operator from <B w, f> = 1/4 sum_{r,s} <R psi_r, psi_s>
/// <[psi_r, w], [psi_s, f]> over the lexicographic basis of Lambda^2.
/// p = 0 and p = q give the zero operator.
FormOperator bochner_quadratic(const CurvatureOperator& r, int p);
/// Same, over the orthonormal Lambda^2 frame given by the columns of psi.
FormOperator bochner_quadratic(const CurvatureOperator& r, int p, const Eigen::MatrixXd& psi);

/// Bochner operator from sum_{i,j} e_j ^ (e_i -| R(e_j, e_i)), R(e_j, e_i)
/// acting on p-forms as a derivation.
FormOperator bochner_direct(const CurvatureOperator& r, int p);

/// Transverse restriction <R|_Q psi, phi> = <R Lambda^2(P) psi, Lambda^2(P) phi>
/// for an n x k frame P with orthonormal columns.
CurvatureOperator restrict_to_frame(const CurvatureOperator& ambient, const Eigen::MatrixXd& frame);

struct ONeillCheck {
  bool pass = false;
  double residual = 0.0;
  Eigen::MatrixXd vertical_block;  // <R^M(xi ^ e_i), xi ^ e_j>
};

/// Compares the xi-block of an ambient curvature operator on a (q+1)-frame
/// whose first vector is xi against -h^2 (minimal flows).
ONeillCheck sphere_oneill_check(const CurvatureOperator& ambient, const ONeillTensor& h,
                                double tol = 1e-9);

}  // namespace bochner
