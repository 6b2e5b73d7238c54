#include "bochner/curvature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bochner/linalg.hpp"

namespace bochner {

namespace {

int pair_count(int q) { return static_cast<int>(binomial(q, 2)); }

// Rank of the pair {x, y} (0-based, x != y) and the sign of e_x ^ e_y relative
// to the sorted monomial.
struct PairTable {
  explicit PairTable(int q) : q(q), rank(static_cast<std::size_t>(q * q), -1) {
    const Basis basis(q, 2);
    for (int r = 0; r < basis.size(); ++r) {
      const Mask m = basis.mask(r);
      const int x = std::countr_zero(m);
      const int y = std::countr_zero(m & (m - 1));
      rank[static_cast<std::size_t>(x * q + y)] = r;
      rank[static_cast<std::size_t>(y * q + x)] = r;
    }
  }
  int at(int x, int y) const { return rank[static_cast<std::size_t>(x * q + y)]; }

  int q;
  std::vector<int> rank;
};

void check_form_degree(int q, int p, const char* op) {
  if (p < 0 || p > q) {
    throw std::invalid_argument(std::string(op) + ": degree p=" + std::to_string(p) +
                                " outside [0, " + std::to_string(q) + "]");
  }
}

int permutation_sign(std::vector<int> seq) {
  int inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size(); ++b)
      if (seq[a] > seq[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

struct SparseEntry {
  int r;  // Lambda^2 frame index
  int c;  // Lambda^p basis index
  double value;
};

// Nonzero entries of [psi_t, e_a] for the lexicographic pair basis psi_t,
// using [e_x ^ e_y, w] = 2 (e_y ^ (e_x -| w) - e_x ^ (e_y -| w)).
std::vector<std::vector<SparseEntry>> lex_bracket_table(int q, int p) {
  const Basis pairs(q, 2);
  const Basis forms(q, p);
  std::vector<std::vector<SparseEntry>> table(static_cast<std::size_t>(forms.size()));
  for (int a = 0; a < forms.size(); ++a) {
    const Mask m = forms.mask(a);
    auto& entries = table[static_cast<std::size_t>(a)];
    for (int t = 0; t < pairs.size(); ++t) {
      const Mask pm = pairs.mask(t);
      const int x = std::countr_zero(pm);
      const int y = std::countr_zero(pm & (pm - 1));
      const auto term = [&](int out, int in, double weight) {
        const int si = interior_sign(in, m);
        if (si == 0) return;
        const Mask reduced = m & ~(Mask{1} << in);
        const int sw = wedge_sign(out, reduced);
        if (sw == 0) return;
        entries.push_back({t, forms.rank(reduced | (Mask{1} << out)), weight * si * sw});
      };
      term(y, x, 2.0);
      term(x, y, -2.0);
    }
  }
  return table;
}

FormOperator assemble_quadratic(const Eigen::MatrixXd& coupling,
                                const std::vector<std::vector<SparseEntry>>& table, int q, int p,
                                int n_frame) {
  const int n = static_cast<int>(table.size());
  FormOperator out{q, p, Eigen::MatrixXd::Zero(n, n)};
  Eigen::MatrixXd w(n_frame, n);
  for (int b = 0; b < n; ++b) {
    w.setZero();
    for (const SparseEntry& e : table[static_cast<std::size_t>(b)]) {
      w.col(e.c) += e.value * coupling.col(e.r);
    }
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (const SparseEntry& e : table[static_cast<std::size_t>(a)]) s += e.value * w(e.r, e.c);
      out.mat(a, b) = 0.25 * s;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CurvatureOperator / ONeillTensor

CurvatureOperator::CurvatureOperator(int q, Eigen::MatrixXd mat) : q_(q) {
  const int m = pair_count(q);
  if (q < 0 || q > kMaxRank) throw std::invalid_argument("curvature operator: q out of range");
  if (mat.rows() != m || mat.cols() != m) {
    throw std::invalid_argument("curvature operator on q=" + std::to_string(q) + " must be " +
                                std::to_string(m) + "x" + std::to_string(m));
  }
  if (symmetry_defect(mat) > kSymmetryTol) {
    throw std::invalid_argument("curvature operator is not symmetric (defect " +
                                std::to_string(symmetry_defect(mat)) + ")");
  }
  mat_ = 0.5 * (mat + mat.transpose());
}

CurvatureOperator CurvatureOperator::zero(int q) {
  const int m = pair_count(q);
  return CurvatureOperator(q, Eigen::MatrixXd::Zero(m, m));
}

CurvatureOperator CurvatureOperator::scaled_identity(int q, double gamma) {
  const int m = pair_count(q);
  return CurvatureOperator(q, gamma * Eigen::MatrixXd::Identity(m, m));
}

double CurvatureOperator::entry(int a, int b, int c, int d) const {
  if (a == b || c == d) return 0.0;
  const double s = ((a < b) == (c < d)) ? 1.0 : -1.0;
  const int r = static_cast<int>(mask_rank((Mask{1} << a) | (Mask{1} << b), q_));
  const int t = static_cast<int>(mask_rank((Mask{1} << c) | (Mask{1} << d), q_));
  return s * mat_(r, t);
}

CurvatureOperator operator+(const CurvatureOperator& x, const CurvatureOperator& y) {
  if (x.q() != y.q()) throw std::invalid_argument("curvature operators of different rank");
  return CurvatureOperator(x.q(), x.mat() + y.mat());
}

ONeillTensor::ONeillTensor(int q, Eigen::MatrixXd mat) : q_(q) {
  if (mat.rows() != q || mat.cols() != q) {
    throw std::invalid_argument("O'Neill tensor must be " + std::to_string(q) + "x" +
                                std::to_string(q));
  }
  if (skew_defect(mat) > kSkewTol) {
    throw std::invalid_argument("O'Neill tensor is not skew-symmetric (defect " +
                                std::to_string(skew_defect(mat)) + ")");
  }
  mat_ = 0.5 * (mat - mat.transpose());
}

ONeillTensor ONeillTensor::zero(int q) { return ONeillTensor(q, Eigen::MatrixXd::Zero(q, q)); }

ONeillTensor ONeillTensor::from_blocks(std::span<const double> b, int q) {
  if (static_cast<int>(b.size()) != q / 2) {
    throw std::invalid_argument("need floor(q/2)=" + std::to_string(q / 2) +
                                " block values, got " + std::to_string(b.size()));
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(q, q);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(2 * i);
    h(k + 1, k) = b[i];
    h(k, k + 1) = -b[i];
  }
  return ONeillTensor(q, std::move(h));
}

// ---------------------------------------------------------------------------
// R_ext and the split

CurvatureOperator r_ext_from_h(const ONeillTensor& h) {
  const int q = h.q();
  const Basis pairs(q, 2);
  const int m = pairs.size();
  Eigen::MatrixXd r(m, m);
  for (int s = 0; s < m; ++s) {
    const Mask ms = pairs.mask(s);
    const int x = std::countr_zero(ms);
    const int y = std::countr_zero(ms & (ms - 1));
    for (int t = 0; t < m; ++t) {
      const Mask mt = pairs.mask(t);
      const int z = std::countr_zero(mt);
      const int w = std::countr_zero(mt & (mt - 1));
      r(s, t) = 2.0 * h.g(x, y) * h.g(z, w) - h.g(y, z) * h.g(x, w) - h.g(z, x) * h.g(y, w);
    }
  }
  return CurvatureOperator(q, std::move(r));
}

CurvatureOperator split_curvature(const CurvatureOperator& r_res, const ONeillTensor& h) {
  if (r_res.q() != h.q()) {
    throw std::invalid_argument("split_curvature: R_res has q=" + std::to_string(r_res.q()) +
                                " but h has q=" + std::to_string(h.q()));
  }
  return r_res + r_ext_from_h(h);
}

// ---------------------------------------------------------------------------
// Canonical form

Eigen::MatrixXd CanonicalBlocks::block_matrix() const {
  return ONeillTensor::from_blocks(b, q).mat();
}

Eigen::MatrixXd CanonicalBlocks::reconstruct() const {
  return frame * block_matrix() * frame.transpose();
}

CanonicalBlocks canonical_form(const ONeillTensor& h) {
  const int q = h.q();
  const Eigen::MatrixXd& hm = h.mat();
  const Eigen::MatrixXd neg_square = -(hm * hm);
  const SymmetricEigen eig = jacobi_eigen(neg_square, 1e-13);

  const double zero_tol = 1e-12 * std::max(1.0, hm.cwiseAbs().maxCoeff());
  constexpr double kSeedTol = 1e-6;

  struct Block {
    double b;
    Eigen::VectorXd first;
    Eigen::VectorXd second;
  };
  std::vector<Block> blocks;
  std::vector<Eigen::VectorXd> kernel;
  std::vector<Eigen::VectorXd> chosen;

  auto project_out = [&](Eigen::VectorXd v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : chosen) v -= c.dot(v) * c;
    return v;
  };

  // Eigenvectors in ascending eigenvalue order seed the blocks; each seed v
  // contributes the pair (v, h v / |h v|), which spans an h-invariant plane.
  auto consume = [&](const Eigen::VectorXd& seed) {
    Eigen::VectorXd v = project_out(seed);
    const double nv = v.norm();
    if (nv < kSeedTol) return;
    v /= nv;
    const Eigen::VectorXd hv = hm * v;
    const double b = hv.norm();
    if (b <= zero_tol) {
      kernel.push_back(v);
      chosen.push_back(v);
      return;
    }
    chosen.push_back(v);
    Eigen::VectorXd w = project_out(hv / b);
    w.normalize();
    chosen.push_back(w);
    blocks.push_back({b, v, w});
  };

  for (Eigen::Index k = 0; k < eig.vectors.cols(); ++k) consume(eig.vectors.col(k));
  // Numerical leftovers: complete with coordinate seeds.
  for (int k = 0; k < q && static_cast<int>(chosen.size()) < q; ++k) {
    consume(Eigen::VectorXd::Unit(q, k));
  }
  if (static_cast<int>(chosen.size()) != q) {
    throw std::runtime_error("canonical_form: failed to complete an orthonormal frame");
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& x, const Block& y) { return x.b < y.b; });

  CanonicalBlocks out;
  out.q = q;
  out.kernel_dim = static_cast<int>(kernel.size());
  out.frame.resize(q, q);
  const int m = q / 2;
  const int zero_blocks = m - static_cast<int>(blocks.size());
  int col = 0;
  std::size_t next_kernel = 0;
  for (int i = 0; i < zero_blocks; ++i) {
    out.b.push_back(0.0);
    out.frame.col(col++) = kernel[next_kernel++];
    out.frame.col(col++) = kernel[next_kernel++];
  }
  for (const Block& blk : blocks) {
    out.b.push_back(blk.b);
    out.frame.col(col++) = blk.first;
    out.frame.col(col++) = blk.second;
  }
  if (q % 2 == 1) out.frame.col(col++) = kernel[next_kernel++];
  return out;
}

// ---------------------------------------------------------------------------
// Eigenfamilies

std::string to_string(FamilyType t) {
  switch (t) {
    case FamilyType::I: return "I";
    case FamilyType::II: return "II";
    case FamilyType::III: return "III";
    case FamilyType::IV: return "IV";
    case FamilyType::Numeric: return "numeric";
  }
  return "?";
}

std::vector<double> FamilySpectrum::eigenvalues_sorted() const {
  std::vector<double> v;
  v.reserve(pairs.size());
  for (const auto& f : pairs) v.push_back(f.eigenvalue);
  std::sort(v.begin(), v.end());
  return v;
}

Eigen::MatrixXd type_three_matrix(std::span<const double> b) {
  const auto m = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd d(m, m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l)
      d(k, l) = (k == l ? 3.0 : 2.0) * b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(l)];
  return d;
}

FamilySpectrum eigenfamilies(const CanonicalBlocks& blocks) {
  const int q = blocks.q;
  const int m = blocks.m();
  FamilySpectrum out;

  if (blocks.kernel_dim > 1) {
    out.labeled = false;
    const CurvatureOperator r = r_ext_from_h(ONeillTensor(q, blocks.reconstruct()));
    const SymmetricEigen eig = jacobi_eigen(r.mat());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      out.pairs.push_back({FamilyType::Numeric, eig.values(k),
                           Form::from_vector(q, 2, eig.vectors.col(k))});
    }
    return out;
  }

  const Eigen::MatrixXd lift = exterior_power(blocks.frame, 2);
  const PairTable pairs(q);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Sum of c * (f_x ^ f_y) for canonical frame vectors f, in original coordinates.
  auto frame_form = [&](std::initializer_list<std::tuple<int, int, double>> terms) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(lift.rows());
    for (const auto& [x, y, c] : terms) {
      const double s = x < y ? 1.0 : -1.0;
      v += s * c * lift.col(pairs.at(x, y));
    }
    return Form::from_vector(q, 2, v);
  };

  const auto& b = blocks.b;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const int a1 = 2 * i, a2 = 2 * i + 1, c1 = 2 * j, c2 = 2 * j + 1;
      const double bb = b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
      out.pairs.push_back({FamilyType::I, bb, frame_form({{a1, c1, inv_sqrt2}, {a2, c2, inv_sqrt2}})});
      out.pairs.push_back({FamilyType::I, -bb, frame_form({{a1, c1, inv_sqrt2}, {a2, c2, -inv_sqrt2}})});
      out.pairs.push_back({FamilyType::II, bb, frame_form({{a1, c2, inv_sqrt2}, {a2, c1, -inv_sqrt2}})});
      out.pairs.push_back({FamilyType::II, -bb, frame_form({{a1, c2, inv_sqrt2}, {a2, c1, inv_sqrt2}})});
    }
  }

  if (m > 0) {
    const SymmetricEigen d = jacobi_eigen(type_three_matrix(b));
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(lift.rows());
      for (int l = 0; l < m; ++l) v += d.vectors(l, k) * lift.col(pairs.at(2 * l, 2 * l + 1));
      out.pairs.push_back({FamilyType::III, d.values(k), Form::from_vector(q, 2, v)});
    }
  }

  if (q % 2 == 1) {
    const int e0 = q - 1;
    for (int l = 0; l < 2 * m; ++l) {
      out.pairs.push_back({FamilyType::IV, 0.0, frame_form({{l, e0, 1.0}})});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Form operators

Form FormOperator::apply(const Form& omega) const {
  if (omega.q() != q || omega.degree() != p) {
    throw std::invalid_argument("FormOperator::apply: form does not match operator");
  }
  return Form::from_vector(q, p, mat * omega.as_vector());
}

double FormOperator::rayleigh(const Form& omega) const {
  const double n2 = omega.norm_squared();
  if (n2 == 0.0) throw std::invalid_argument("rayleigh quotient of the zero form");
  return inner(apply(omega), omega) / n2;
}

double FormOperator::min_eigenvalue() const { return bochner::min_eigenvalue(mat); }

// ---------------------------------------------------------------------------
// Bochner operators

FormOperator bochner_quadratic(const CurvatureOperator& r, int p) {
  const int q = r.q();
  check_form_degree(q, p, "bochner_quadratic");
  const int n = static_cast<int>(binomial(q, p));
  if (p == 0 || p == q) return {q, p, Eigen::MatrixXd::Zero(n, n)};
  return assemble_quadratic(r.mat(), lex_bracket_table(q, p), q, p, r.dim());
}

FormOperator bochner_quadratic(const CurvatureOperator& r, int p, const Eigen::MatrixXd& psi) {
  const int q = r.q();
  check_form_degree(q, p, "bochner_quadratic");
  const int m = r.dim();
  if (psi.rows() != m || psi.cols() != m) {
    throw std::invalid_argument("bochner_quadratic: Lambda^2 frame must be square of size C(q,2)");
  }
  if ((psi.transpose() * psi - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("bochner_quadratic: Lambda^2 frame is not orthonormal");
  }
  const int n = static_cast<int>(binomial(q, p));
  if (p == 0 || p == q) return {q, p, Eigen::MatrixXd::Zero(n, n)};

  // [psi_r, e_a] = sum_t psi(t, r) [lex_t, e_a]
  const auto lex = lex_bracket_table(q, p);
  std::vector<std::vector<SparseEntry>> table(lex.size());
  Eigen::MatrixXd dense(m, n);
  for (std::size_t a = 0; a < lex.size(); ++a) {
    dense.setZero();
    for (const SparseEntry& e : lex[a]) dense.col(e.c) += e.value * psi.row(e.r).transpose();
    for (int c = 0; c < n; ++c)
      for (int rr = 0; rr < m; ++rr)
        if (dense(rr, c) != 0.0) table[a].push_back({rr, c, dense(rr, c)});
  }
  const Eigen::MatrixXd coupling = psi.transpose() * r.mat() * psi;
  return assemble_quadratic(coupling, table, q, p, m);
}

FormOperator bochner_direct(const CurvatureOperator& r, int p) {
  const int q = r.q();
  check_form_degree(q, p, "bochner_direct");
  const Basis forms(q, p);
  const int n = forms.size();
  FormOperator out{q, p, Eigen::MatrixXd::Zero(n, n)};
  if (p == 0 || p == q) return out;

  const PairTable pairs(q);
  // <R(e_j ^ e_i), e_k ^ e_l>
  auto curv = [&](int j, int i, int k, int l) {
    if (j == i || k == l) return 0.0;
    const double s = ((j < i) == (k < l)) ? 1.0 : -1.0;
    return s * r.mat()(pairs.at(j, i), pairs.at(k, l));
  };

  std::vector<double> image(static_cast<std::size_t>(n));
  std::vector<int> slots(static_cast<std::size_t>(p));
  for (int a = 0; a < n; ++a) {
    const Mask ma = forms.mask(a);
    {
      int k = 0;
      for (Mask t = ma; t; t &= t - 1) slots[static_cast<std::size_t>(k++)] = std::countr_zero(t);
    }
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) {
        if (i == j) continue;
        // Derivation extension of Z -> R(e_j, e_i) Z, applied slot by slot.
        std::fill(image.begin(), image.end(), 0.0);
        bool any = false;
        for (int s = 0; s < p; ++s) {
          const int k = slots[static_cast<std::size_t>(s)];
          for (int l = 0; l < q; ++l) {
            const double c = curv(j, i, k, l);
            if (c == 0.0) continue;
            if (l != k && (ma & (Mask{1} << l))) continue;
            std::vector<int> seq = slots;
            seq[static_cast<std::size_t>(s)] = l;
            const Mask mm = (ma & ~(Mask{1} << k)) | (Mask{1} << l);
            image[static_cast<std::size_t>(forms.rank(mm))] += c * permutation_sign(std::move(seq));
            any = true;
          }
        }
        if (!any) continue;
        // e_j ^ (e_i -| image)
        for (int c = 0; c < n; ++c) {
          const double v = image[static_cast<std::size_t>(c)];
          if (v == 0.0) continue;
          const Mask mc = forms.mask(c);
          const int si = interior_sign(i, mc);
          if (si == 0) continue;
          const Mask reduced = mc & ~(Mask{1} << i);
          const int sj = wedge_sign(j, reduced);
          if (sj == 0) continue;
          out.mat(forms.rank(reduced | (Mask{1} << j)), a) += v * si * sj;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction and the sphere check

CurvatureOperator restrict_to_frame(const CurvatureOperator& ambient, const Eigen::MatrixXd& frame) {
  if (frame.rows() != ambient.q()) {
    throw std::invalid_argument("restrict_to_frame: frame has " + std::to_string(frame.rows()) +
                                " rows, ambient rank is " + std::to_string(ambient.q()));
  }
  const Eigen::MatrixXd lift = exterior_power(frame, 2);
  const Eigen::MatrixXd r = lift.transpose() * ambient.mat() * lift;
  return CurvatureOperator(static_cast<int>(frame.cols()), 0.5 * (r + r.transpose()));
}

ONeillCheck sphere_oneill_check(const CurvatureOperator& ambient, const ONeillTensor& h, double tol) {
  const int q = h.q();
  if (ambient.q() != q + 1) {
    throw std::invalid_argument("sphere_oneill_check: ambient operator must live on q+1=" +
                                std::to_string(q + 1) + " directions, got " +
                                std::to_string(ambient.q()));
  }
  const PairTable pairs(q + 1);
  ONeillCheck out;
  out.vertical_block.resize(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) out.vertical_block(i, j) = ambient.mat()(pairs.at(0, i + 1), pairs.at(0, j + 1));
  const Eigen::MatrixXd neg_square = -(h.mat() * h.mat());
  out.residual = q == 0 ? 0.0 : (out.vertical_block - neg_square).cwiseAbs().maxCoeff();
  out.pass = out.residual <= tol;
  return out;
}

}  // namespace bochner
