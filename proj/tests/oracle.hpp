#pragma once

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's algebra; forms are moved in and out through their
// coefficient vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bochner/curvature.hpp"
#include "bochner/exterior.hpp"

namespace oracle {

using Blade = std::uint32_t;

// Lexicographic p-subsets of {0..q-1}, generated by successor stepping.
inline std::vector<std::vector<int>> subsets(int q, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) c[static_cast<std::size_t>(k)] = k;
  if (p > q) return out;
  while (true) {
    out.push_back(c);
    int k = p - 1;
    while (k >= 0 && c[static_cast<std::size_t>(k)] == q - p + k) --k;
    if (k < 0) break;
    ++c[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < p; ++t) c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

inline Blade blade_of(const std::vector<int>& s) {
  Blade b = 0;
  for (int x : s) b |= Blade{1} << x;
  return b;
}

inline int bits(Blade b) {
  int n = 0;
  for (; b; b >>= 1) n += static_cast<int>(b & 1u);
  return n;
}

// Sign of e_A e_B -> e_{A xor B} for generators with e_i e_i = -1.
inline double blade_sign(Blade a, Blade b, int q) {
  int swaps = 0;
  for (int x = 0; x < q; ++x) {
    if (!(a >> x & 1u)) continue;
    for (int y = 0; y < x; ++y)
      if (b >> y & 1u) ++swaps;
  }
  const int squares = bits(a & b);
  return ((swaps + squares) % 2 == 0) ? 1.0 : -1.0;
}

// Full exterior algebra: vector of length 2^q indexed by blade.
using Algebra = std::vector<double>;

inline Algebra embed(const bochner::Form& f) {
  const int q = f.q();
  Algebra a(std::size_t{1} << q, 0.0);
  const auto sets = subsets(q, f.degree());
  for (std::size_t r = 0; r < sets.size(); ++r) a[blade_of(sets[r])] = f.coeffs()[r];
  return a;
}

inline bochner::Form extract(const Algebra& a, int q, int p) {
  const auto sets = subsets(q, p);
  std::vector<double> c(sets.size());
  for (std::size_t r = 0; r < sets.size(); ++r) c[r] = a[blade_of(sets[r])];
  return bochner::Form(q, p, c);
}

inline Algebra product(const Algebra& x, const Algebra& y, int q) {
  Algebra out(x.size(), 0.0);
  for (Blade a = 0; a < x.size(); ++a) {
    if (x[a] == 0.0) continue;
    for (Blade b = 0; b < y.size(); ++b) {
      if (y[b] == 0.0) continue;
      out[a ^ b] += blade_sign(a, b, q) * x[a] * y[b];
    }
  }
  return out;
}

inline Algebra bracket(const Algebra& x, const Algebra& y, int q) {
  Algebra xy = product(x, y, q);
  const Algebra yx = product(y, x, q);
  for (std::size_t k = 0; k < xy.size(); ++k) xy[k] -= yx[k];
  return xy;
}

// Matrix of left Clifford multiplication by e_k (0-based) on the 2^q algebra.
inline Eigen::MatrixXd left_matrix(int q, int k) {
  const int n = 1 << q;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const Blade ek = Blade{1} << k;
  for (Blade b = 0; b < static_cast<Blade>(n); ++b) m(static_cast<int>(ek ^ b), static_cast<int>(b)) = blade_sign(ek, b, q);
  return m;
}

inline double max_abs_diff(const Algebra& a, const Algebra& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// <R_ext(e_a ^ e_b), e_c ^ e_d> from the trilinear expression in g(hX, Y) = H(y, x).
inline double r_ext_entry(const Eigen::MatrixXd& h, int a, int b, int c, int d) {
  auto g = [&](int x, int y) { return h(y, x); };
  return 2.0 * g(a, b) * g(c, d) - g(b, c) * g(a, d) - g(c, a) * g(b, d);
}

inline Eigen::MatrixXd r_ext_matrix(const Eigen::MatrixXd& h) {
  const int q = static_cast<int>(h.rows());
  const auto pairs = subsets(q, 2);
  const int n = static_cast<int>(pairs.size());
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      m(r, s) = r_ext_entry(h, pairs[static_cast<std::size_t>(r)][0], pairs[static_cast<std::size_t>(r)][1],
                            pairs[static_cast<std::size_t>(s)][0], pairs[static_cast<std::size_t>(s)][1]);
  return m;
}

// Quadratic-form Bochner operator through the brute-force bracket.
inline Eigen::MatrixXd bochner(const Eigen::MatrixXd& r, int q, int p) {
  const auto pairs = subsets(q, 2);
  const auto mono = subsets(q, p);
  const int np = static_cast<int>(pairs.size());
  const int n = static_cast<int>(mono.size());
  // brackets[r][col] = [psi_r, e_col] as a Lambda^p coefficient vector
  std::vector<Eigen::MatrixXd> br(static_cast<std::size_t>(np), Eigen::MatrixXd::Zero(n, n));
  for (int a = 0; a < np; ++a) {
    Algebra psi(std::size_t{1} << q, 0.0);
    psi[blade_of(pairs[static_cast<std::size_t>(a)])] = 1.0;
    for (int col = 0; col < n; ++col) {
      Algebra w(std::size_t{1} << q, 0.0);
      w[blade_of(mono[static_cast<std::size_t>(col)])] = 1.0;
      const Algebra b = bracket(psi, w, q);
      for (int row = 0; row < n; ++row) br[static_cast<std::size_t>(a)](row, col) = b[blade_of(mono[static_cast<std::size_t>(row)])];
    }
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b)
      if (r(a, b) != 0.0) out += 0.25 * r(a, b) * br[static_cast<std::size_t>(a)].transpose() * br[static_cast<std::size_t>(b)];
  return out;
}

// Eigenvalues of R_ext predicted by the block families for canonical b.
inline std::vector<double> family_eigenvalues(const std::vector<double>& b, int q) {
  const int m = static_cast<int>(b.size());
  std::vector<double> ev;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double x = b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
      ev.insert(ev.end(), {x, -x, x, -x});
    }
  }
  Eigen::MatrixXd d(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      d(k, l) = (k == l ? 3.0 : 2.0) * b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(l)];
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
    for (int k = 0; k < m; ++k) ev.push_back(es.eigenvalues()(k));
  }
  if (q % 2 == 1) ev.insert(ev.end(), static_cast<std::size_t>(2 * m), 0.0);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

// Random inputs.

inline bochner::Form random_form(std::mt19937_64& rng, int q, int p) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(bochner::binomial(q, p)));
  for (auto& x : c) x = u(rng);
  return bochner::Form(q, p, c);
}

inline bochner::Form random_int_form(std::mt19937_64& rng, int q, int p) {
  std::uniform_int_distribution<int> u(-3, 3);
  std::vector<double> c(static_cast<std::size_t>(bochner::binomial(q, p)));
  for (auto& x : c) x = u(rng);
  return bochner::Form(q, p, c);
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) a(r, s) = u(rng);
  return 0.5 * (a + a.transpose());
}

inline Eigen::MatrixXd random_skew(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) a(r, s) = u(rng);
  return 0.5 * (a - a.transpose());
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) a(r, s) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

inline std::vector<double> random_blocks(std::mt19937_64& rng, int m, double lo = 0.0, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> b(static_cast<std::size_t>(m));
  for (auto& x : b) x = u(rng);
  std::sort(b.begin(), b.end());
  return b;
}

}  // namespace oracle
