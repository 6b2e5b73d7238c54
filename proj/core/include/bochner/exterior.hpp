#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace bochner {

// Largest ambient rank q supported. Monomials are stored as bitmasks and the
// rank lookup tables are 2^q long, so this is a soft memory limit.
inline constexpr int kMaxRank = 16;

using Mask = std::uint32_t;

std::int64_t binomial(int n, int k);

/// Strictly increasing tuple of 1-based frame indices naming the monomial
/// e_{i_1} ^ ... ^ e_{i_p}.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Throws std::invalid_argument unless the entries are >= 1 and strictly
  /// increasing.
  explicit MultiIndex(std::vector<int> indices);
  MultiIndex(std::initializer_list<int> indices);

  static MultiIndex from_mask(Mask mask);

  int degree() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& indices() const { return indices_; }
  int operator[](int k) const { return indices_[static_cast<std::size_t>(k)]; }
  Mask mask() const;

  bool valid_for(int q) const;
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> indices_;
};

/// Lexicographic rank of idx among the degree-p multi-indices over 1..q.
/// Throws std::invalid_argument when idx does not fit q.
std::int64_t rank_of(const MultiIndex& idx, int q);
/// Inverse of rank_of.
MultiIndex unrank_of(std::int64_t rank, int p, int q);

// Mask-level variants used by the hot loops.
std::int64_t mask_rank(Mask mask, int q);
Mask rank_mask(std::int64_t rank, int p, int q);

/// Enumerates the monomial basis of Lambda^p(R^q) in lexicographic order and
/// answers mask -> rank lookups in O(1).
class Basis {
 public:
  Basis(int q, int p);

  int q() const { return q_; }
  int p() const { return p_; }
  int size() const { return static_cast<int>(masks_.size()); }
  Mask mask(int rank) const { return masks_[static_cast<std::size_t>(rank)]; }
  const std::vector<Mask>& masks() const { return masks_; }
  /// -1 when the mask has the wrong degree.
  int rank(Mask mask) const { return lookup_[mask]; }

 private:
  int q_;
  int p_;
  std::vector<Mask> masks_;
  std::vector<int> lookup_;
};

/// Element of Lambda^p(R^q) in the orthonormal frame e_1..e_q, stored as a
/// coefficient vector over the lexicographic monomial basis.
class Form {
 public:
  Form() = default;
  /// Zero form.
  Form(int q, int p);
  Form(int q, int p, std::vector<double> coeffs);

  static Form scalar(int q, double c);
  /// The basis covector e_k (1-based).
  static Form e(int q, int k);
  static Form vector(int q, std::span<const double> components);
  static Form monomial(int q, const MultiIndex& idx, double c = 1.0);

  int q() const { return q_; }
  int degree() const { return p_; }
  int dim() const { return static_cast<int>(coeffs_.size()); }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](int rank) const { return coeffs_[static_cast<std::size_t>(rank)]; }
  double coeff(const MultiIndex& idx) const;
  Eigen::Map<const Eigen::VectorXd> as_vector() const;
  static Form from_vector(int q, int p, const Eigen::VectorXd& v);

  double norm_squared() const;
  double norm() const;
  double max_abs() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(double s);

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) { return a *= -1.0; }
  friend Form operator*(double s, Form a) { return a *= s; }
  friend Form operator*(Form a, double s) { return a *= s; }

  std::string to_string() const;

 private:
  void add_scaled(const Form& other, double s);

  int q_ = 0;
  int p_ = 0;
  std::vector<double> coeffs_;
};

Form wedge(const Form& alpha, const Form& beta);
/// X interior omega, X of degree 1. The contraction of a 0-form is the zero
/// 0-form.
Form interior(const Form& x, const Form& omega);
double inner(const Form& alpha, const Form& beta);

/// e_k ^ omega and e_k interior omega without building the degree-1 form.
Form basis_wedge(int k, const Form& omega);
Form basis_interior(int k, const Form& omega);

/// Sign of e_k ^ e_M relative to the sorted monomial e_{M+k}, 0 when k is in M.
/// k is 0-based here.
int wedge_sign(int k, Mask m);
/// Sign of e_k interior e_M, 0 when k is not in M. k is 0-based.
int interior_sign(int k, Mask m);

/// Matrix of the map induced by A on p-forms (the p-th compound matrix), in
/// the lexicographic bases. A may be rectangular: an n x k matrix with
/// orthonormal columns yields the isometric embedding Lambda^p(R^k) ->
/// Lambda^p(R^n).
Eigen::MatrixXd exterior_power(const Eigen::MatrixXd& a, int p);

}  // namespace bochner
