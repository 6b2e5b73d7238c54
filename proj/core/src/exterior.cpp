#include "bochner/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/LU>

namespace bochner {

namespace {

void check_rank(int q) {
  if (q < 0 || q > kMaxRank) {
    throw std::invalid_argument("ambient rank q=" + std::to_string(q) +
                                " outside [0, " + std::to_string(kMaxRank) + "]");
  }
}

void check_degree(int q, int p) {
  check_rank(q);
  if (p < 0 || p > q) {
    throw std::invalid_argument("degree p=" + std::to_string(p) +
                                " outside [0, q=" + std::to_string(q) + "]");
  }
}

void check_same_rank(const Form& a, const Form& b, const char* op) {
  if (a.q() != b.q()) {
    throw std::invalid_argument(std::string(op) + ": mismatched ambient rank " +
                                std::to_string(a.q()) + " vs " + std::to_string(b.q()));
  }
}

Mask bits_below(int k) { return (Mask{1} << k) - 1u; }

}  // namespace

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 1) {
      throw std::invalid_argument("multi-index entries must be >= 1");
    }
    if (k > 0 && indices_[k] <= indices_[k - 1]) {
      throw std::invalid_argument("multi-index must be strictly increasing: " + to_string());
    }
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> indices)
    : MultiIndex(std::vector<int>(indices)) {}

MultiIndex MultiIndex::from_mask(Mask mask) {
  std::vector<int> idx;
  for (int k = 0; mask != 0; ++k, mask >>= 1) {
    if (mask & 1u) idx.push_back(k + 1);
  }
  return MultiIndex(std::move(idx));
}

Mask MultiIndex::mask() const {
  Mask m = 0;
  for (int i : indices_) m |= Mask{1} << (i - 1);
  return m;
}

bool MultiIndex::valid_for(int q) const {
  return indices_.empty() || (indices_.back() <= q && q <= kMaxRank);
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) os << ',';
    os << indices_[k];
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// Ranking
//
// For c_1 < ... < c_p in 1..q the lexicographic rank is
//   sum_k sum_{c_{k-1} < j < c_k} C(q - j, p - k),  c_0 = 0.

std::int64_t rank_of(const MultiIndex& idx, int q) {
  check_rank(q);
  if (!idx.valid_for(q)) {
    throw std::invalid_argument("multi-index " + idx.to_string() + " out of range for q=" +
                                std::to_string(q));
  }
  const int p = idx.degree();
  std::int64_t r = 0;
  int prev = 0;
  for (int k = 1; k <= p; ++k) {
    const int c = idx[k - 1];
    for (int j = prev + 1; j < c; ++j) r += binomial(q - j, p - k);
    prev = c;
  }
  return r;
}

MultiIndex unrank_of(std::int64_t rank, int p, int q) {
  check_degree(q, p);
  if (rank < 0 || rank >= binomial(q, p)) {
    throw std::invalid_argument("rank " + std::to_string(rank) + " out of range for C(" +
                                std::to_string(q) + "," + std::to_string(p) + ")");
  }
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(p));
  int j = 1;
  for (int k = 1; k <= p; ++k) {
    for (;; ++j) {
      const std::int64_t block = binomial(q - j, p - k);
      if (rank < block) break;
      rank -= block;
    }
    idx.push_back(j);
    ++j;
  }
  return MultiIndex(std::move(idx));
}

std::int64_t mask_rank(Mask mask, int q) { return rank_of(MultiIndex::from_mask(mask), q); }

Mask rank_mask(std::int64_t rank, int p, int q) { return unrank_of(rank, p, q).mask(); }

// ---------------------------------------------------------------------------
// Basis

Basis::Basis(int q, int p) : q_(q), p_(p) {
  check_degree(q, p);
  lookup_.assign(std::size_t{1} << q, -1);
  // Lexicographic order on index tuples is the order produced by a recursive
  // enumeration that picks the smallest remaining index first.
  masks_.reserve(static_cast<std::size_t>(binomial(q, p)));
  std::vector<int> stack;
  auto emit = [&](auto&& self, int start) -> void {
    if (static_cast<int>(stack.size()) == p) {
      Mask m = 0;
      for (int i : stack) m |= Mask{1} << i;
      lookup_[m] = static_cast<int>(masks_.size());
      masks_.push_back(m);
      return;
    }
    for (int i = start; i < q; ++i) {
      stack.push_back(i);
      self(self, i + 1);
      stack.pop_back();
    }
  };
  emit(emit, 0);
}

// ---------------------------------------------------------------------------
// Form

Form::Form(int q, int p) : q_(q), p_(p) {
  check_degree(q, p);
  coeffs_.assign(static_cast<std::size_t>(binomial(q, p)), 0.0);
}

Form::Form(int q, int p, std::vector<double> coeffs) : q_(q), p_(p), coeffs_(std::move(coeffs)) {
  check_degree(q, p);
  if (static_cast<std::int64_t>(coeffs_.size()) != binomial(q, p)) {
    throw std::invalid_argument("form of degree " + std::to_string(p) + " over q=" +
                                std::to_string(q) + " needs " +
                                std::to_string(binomial(q, p)) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
  }
}

Form Form::scalar(int q, double c) { return Form(q, 0, {c}); }

Form Form::e(int q, int k) {
  if (k < 1 || k > q) throw std::invalid_argument("basis vector index out of range");
  Form f(q, 1);
  f.coeffs_[static_cast<std::size_t>(k - 1)] = 1.0;
  return f;
}

Form Form::vector(int q, std::span<const double> components) {
  return Form(q, 1, std::vector<double>(components.begin(), components.end()));
}

Form Form::monomial(int q, const MultiIndex& idx, double c) {
  Form f(q, idx.degree());
  f.coeffs_[static_cast<std::size_t>(rank_of(idx, q))] = c;
  return f;
}

double Form::coeff(const MultiIndex& idx) const {
  if (idx.degree() != p_) throw std::invalid_argument("coeff: degree mismatch");
  return coeffs_[static_cast<std::size_t>(rank_of(idx, q_))];
}

Eigen::Map<const Eigen::VectorXd> Form::as_vector() const {
  return {coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size())};
}

Form Form::from_vector(int q, int p, const Eigen::VectorXd& v) {
  return Form(q, p, std::vector<double>(v.data(), v.data() + v.size()));
}

double Form::norm_squared() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double Form::norm() const { return std::sqrt(norm_squared()); }

double Form::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void Form::add_scaled(const Form& other, double s) {
  if (q_ != other.q_ || p_ != other.p_) {
    throw std::invalid_argument("cannot add forms of different rank or degree");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
}

Form& Form::operator+=(const Form& other) {
  add_scaled(other, 1.0);
  return *this;
}

Form& Form::operator-=(const Form& other) {
  add_scaled(other, -1.0);
  return *this;
}

Form& Form::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

std::string Form::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int r = 0; r < dim(); ++r) {
    const double c = coeffs_[static_cast<std::size_t>(r)];
    if (c == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    os << c;
    const MultiIndex idx = unrank_of(r, p_, q_);
    for (int i : idx.indices()) os << "*e" << i;
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------
// Products

int wedge_sign(int k, Mask m) {
  if (m & (Mask{1} << k)) return 0;
  // e_k must move past every index of M below k.
  return (std::popcount(m & bits_below(k)) % 2 == 0) ? 1 : -1;
}

int interior_sign(int k, Mask m) {
  if (!(m & (Mask{1} << k))) return 0;
  return (std::popcount(m & bits_below(k)) % 2 == 0) ? 1 : -1;
}

Form wedge(const Form& alpha, const Form& beta) {
  check_same_rank(alpha, beta, "wedge");
  const int q = alpha.q();
  const int p = alpha.degree() + beta.degree();
  if (p > q) {
    throw std::invalid_argument("wedge: combined degree " + std::to_string(p) +
                                " exceeds q=" + std::to_string(q));
  }
  const Basis ba(q, alpha.degree());
  const Basis bb(q, beta.degree());
  const Basis out_basis(q, p);
  std::vector<double> out(static_cast<std::size_t>(out_basis.size()), 0.0);
  for (int i = 0; i < ba.size(); ++i) {
    const double a = alpha[i];
    if (a == 0.0) continue;
    const Mask ma = ba.mask(i);
    for (int j = 0; j < bb.size(); ++j) {
      const double b = beta[j];
      if (b == 0.0) continue;
      const Mask mb = bb.mask(j);
      if (ma & mb) continue;
      // Sign of the shuffle: count pairs (x in A, y in B) with x > y.
      int inversions = 0;
      for (Mask rest = mb; rest != 0; rest &= rest - 1) {
        const int y = std::countr_zero(rest);
        inversions += std::popcount(ma & ~bits_below(y + 1));
      }
      const double s = (inversions % 2 == 0) ? 1.0 : -1.0;
      out[static_cast<std::size_t>(out_basis.rank(ma | mb))] += s * a * b;
    }
  }
  return Form(q, p, std::move(out));
}

Form basis_wedge(int k, const Form& omega) {
  const int q = omega.q();
  const int p = omega.degree();
  if (k < 1 || k > q) throw std::invalid_argument("basis_wedge: index out of range");
  if (p + 1 > q) throw std::invalid_argument("basis_wedge: degree exceeds q");
  const Basis in(q, p);
  const Basis out_basis(q, p + 1);
  std::vector<double> out(static_cast<std::size_t>(out_basis.size()), 0.0);
  for (int r = 0; r < in.size(); ++r) {
    const double c = omega[r];
    if (c == 0.0) continue;
    const Mask m = in.mask(r);
    const int s = wedge_sign(k - 1, m);
    if (s == 0) continue;
    out[static_cast<std::size_t>(out_basis.rank(m | (Mask{1} << (k - 1))))] += s * c;
  }
  return Form(q, p + 1, std::move(out));
}

Form basis_interior(int k, const Form& omega) {
  const int q = omega.q();
  const int p = omega.degree();
  if (k < 1 || k > q) throw std::invalid_argument("basis_interior: index out of range");
  if (p == 0) return Form(q, 0);
  const Basis in(q, p);
  const Basis out_basis(q, p - 1);
  std::vector<double> out(static_cast<std::size_t>(out_basis.size()), 0.0);
  for (int r = 0; r < in.size(); ++r) {
    const double c = omega[r];
    if (c == 0.0) continue;
    const Mask m = in.mask(r);
    const int s = interior_sign(k - 1, m);
    if (s == 0) continue;
    out[static_cast<std::size_t>(out_basis.rank(m & ~(Mask{1} << (k - 1))))] += s * c;
  }
  return Form(q, p - 1, std::move(out));
}

Form interior(const Form& x, const Form& omega) {
  check_same_rank(x, omega, "interior");
  if (x.degree() != 1) throw std::invalid_argument("interior: X must be a 1-form");
  const int q = omega.q();
  if (omega.degree() == 0) return Form(q, 0);
  Form out(q, omega.degree() - 1);
  for (int k = 1; k <= q; ++k) {
    const double c = x[k - 1];
    if (c != 0.0) out += c * basis_interior(k, omega);
  }
  return out;
}

double inner(const Form& alpha, const Form& beta) {
  check_same_rank(alpha, beta, "inner");
  if (alpha.degree() != beta.degree()) {
    throw std::invalid_argument("inner: mismatched degrees " + std::to_string(alpha.degree()) +
                                " and " + std::to_string(beta.degree()));
  }
  double s = 0.0;
  for (int r = 0; r < alpha.dim(); ++r) s += alpha[r] * beta[r];
  return s;
}

// ---------------------------------------------------------------------------
// Compound matrices: entry (I, J) is det A[I, J].

Eigen::MatrixXd exterior_power(const Eigen::MatrixXd& a, int p) {
  const Basis row_basis(static_cast<int>(a.rows()), p);
  const Basis col_basis(static_cast<int>(a.cols()), p);
  Eigen::MatrixXd out(row_basis.size(), col_basis.size());
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(p));
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(p));
  Eigen::MatrixXd sub(p, p);
  auto unpack = [](Mask m, std::vector<Eigen::Index>& idx) {
    std::size_t k = 0;
    for (; m; m &= m - 1) idx[k++] = std::countr_zero(m);
  };
  for (int i = 0; i < row_basis.size(); ++i) {
    unpack(row_basis.mask(i), rows);
    for (int j = 0; j < col_basis.size(); ++j) {
      unpack(col_basis.mask(j), cols);
      for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c)
          sub(r, c) = a(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
      out(i, j) = p == 0 ? 1.0 : sub.determinant();
    }
  }
  return out;
}

}  // namespace bochner
