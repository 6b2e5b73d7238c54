#include "bochner/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bochner/bounds.hpp"
#include "bochner/linalg.hpp"

namespace bochner {

namespace {

constexpr double kExpectTol = 1e-9;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void expect(ModelFlow& mf, std::string key, double expected, double computed, std::string source) {
  Expectation e;
  e.name = std::move(key);
  e.expected = expected;
  e.computed = computed;
  e.source = std::move(source);
  e.tol = kExpectTol;
  e.pass = std::abs(computed - expected) <= kExpectTol;
  mf.expected.push_back(std::move(e));
}

// Skew matrix on q = 2m+1 directions: index 0 is the kernel, then m blocks
// of size `scale` on (1,2), (3,4), ...
Eigen::MatrixXd kernel_first_blocks(int m, double scale) {
  const int q = 2 * m + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < m; ++i) {
    const int x = 1 + 2 * i;
    a(x + 1, x) = scale;
    a(x, x + 1) = -scale;
  }
  return a;
}

// Curvature operator of S^1 x S^{2m+1} on the frame (u0, s_1, ..., s_{2m+1}):
// identity on planes inside the sphere factor, zero on planes containing u0.
CurvatureOperator product_ambient(int m) {
  const int n = 2 * m + 2;
  const Basis pairs(n, 2);
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(pairs.size(), pairs.size());
  for (int r = 0; r < pairs.size(); ++r) {
    if ((pairs.mask(r) & 1u) == 0) mat(r, r) = 1.0;
  }
  return CurvatureOperator(n, std::move(mat));
}

double gamma0_of(const CurvatureOperator& r) { return jacobi_eigen(r.mat()).values(0); }

double rayleigh_total(const ModelFlow& mf, int p, const Form& w) {
  return bochner_quadratic(split_curvature(mf.r_res, mf.h), p).rayleigh(w);
}

void add_hopf_type_checks(ModelFlow& mf, double bound_p2, double rayleigh_p2,
                          const std::string& rayleigh_source) {
  const Form& omega = mf.test_forms.front().form;
  const BoundReport rep = total_bound_report(mf.r_res, mf.h, 2);
  expect(mf, "bound_total_p2", bound_p2, rep.bound_total, "closed_form");
  expect(mf, "kahler_rayleigh_p2", rayleigh_p2, rayleigh_total(mf, 2, omega), rayleigh_source);
}

}  // namespace

std::string to_string(ModelName n) {
  switch (n) {
    case ModelName::Constant: return "constant";
    case ModelName::Hopf: return "hopf";
    case ModelName::TiltedProduct: return "tilted_product";
    case ModelName::StrictProduct: return "strict_product";
    case ModelName::SphereMinimal: return "sphere_minimal";
  }
  return "?";
}

std::optional<ModelName> parse_model_name(const std::string& s) {
  for (ModelName n : {ModelName::Constant, ModelName::Hopf, ModelName::TiltedProduct,
                      ModelName::StrictProduct, ModelName::SphereMinimal}) {
    if (to_string(n) == s) return n;
  }
  return std::nullopt;
}

TransverseSplit restrict_along(const CurvatureOperator& ambient, const Eigen::VectorXd& xi) {
  const int n = ambient.q();
  require(xi.size() == n, "restrict_along: xi has " + std::to_string(xi.size()) +
                              " components, ambient rank is " + std::to_string(n));
  const double len = xi.norm();
  require(len > 0.0, "restrict_along: xi must be nonzero");
  Eigen::MatrixXd seeds(n, n + 1);
  seeds.col(0) = xi / len;
  seeds.rightCols(n) = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd basis = orthonormalize(seeds, 1e-8);
  require(basis.cols() == n, "restrict_along: could not complete xi to a basis");
  TransverseSplit out;
  out.frame = basis.rightCols(n - 1);
  out.r_res = restrict_to_frame(ambient, out.frame);
  return out;
}

const Form* ModelFlow::test_form(const std::string& form_name) const {
  for (const auto& f : test_forms)
    if (f.name == form_name) return &f.form;
  return nullptr;
}

const Expectation* ModelFlow::expectation(const std::string& key) const {
  for (const auto& e : expected)
    if (e.name == key) return &e;
  return nullptr;
}

bool ModelFlow::self_check_passed() const {
  return std::all_of(expected.begin(), expected.end(), [](const Expectation& e) { return e.pass; });
}

Form kahler_form(const ONeillTensor& h) {
  const CanonicalBlocks blocks = canonical_form(h);
  const int q = h.q();
  Form omega(q, 2);
  for (int i = 0; i < blocks.m(); ++i) {
    if (blocks.b[static_cast<std::size_t>(i)] == 0.0) continue;
    const Eigen::VectorXd f1 = blocks.frame.col(2 * i);
    const Eigen::VectorXd f2 = blocks.frame.col(2 * i + 1);
    omega += wedge(Form::vector(q, {f1.data(), static_cast<std::size_t>(q)}),
                   Form::vector(q, {f2.data(), static_cast<std::size_t>(q)}));
  }
  return omega;
}

ModelFlow constant_curvature(int q, double gamma) {
  require(q >= 2, "constant_curvature: need q >= 2, got q=" + std::to_string(q));
  ModelFlow mf;
  mf.name = ModelName::Constant;
  mf.param = q;
  mf.q = q;
  mf.r_res = CurvatureOperator::scaled_identity(q, gamma);
  mf.h = ONeillTensor::zero(q);
  for (int p = 1; p < q; ++p) {
    const Eigen::VectorXd ev = jacobi_eigen(bochner_quadratic(mf.r_res, p).mat).values;
    const double target = gamma * p * (q - p);
    expect(mf, "min_eig_p" + std::to_string(p), target, ev(0), "closed_form");
    expect(mf, "max_eig_p" + std::to_string(p), target, ev(ev.size() - 1), "closed_form");
  }
  return mf;
}

ModelFlow hopf(int m) {
  require(m >= 2, "hopf: need m >= 2 for the equality statement, got m=" + std::to_string(m));
  ModelFlow mf;
  mf.name = ModelName::Hopf;
  mf.param = m;
  mf.q = 2 * m;
  mf.r_res = CurvatureOperator::scaled_identity(mf.q, 1.0);
  mf.h = ONeillTensor::from_blocks(std::vector<double>(static_cast<std::size_t>(m), 1.0), mf.q);
  mf.test_forms.push_back({"kahler", kahler_form(mf.h)});

  const CanonicalBlocks blocks = canonical_form(mf.h);
  expect(mf, "gamma0", 1.0, gamma0_of(mf.r_res), "reference");
  expect(mf, "b_max_sq", 1.0, blocks.b_max() * blocks.b_max(), "reference");
  expect(mf, "bound_total_p1", 0.0, total_bound_report(mf.r_res, mf.h, 1).bound_total, "closed_form");
  add_hopf_type_checks(mf, 0.0, 0.0, "computed");
  expect(mf, "min_eig_total_p2", 0.0,
         bochner_quadratic(split_curvature(mf.r_res, mf.h), 2).min_eigenvalue(), "computed");
  return mf;
}

ModelFlow tilted_product(int m) {
  require(m >= 2, "tilted_product: need m >= 2, got m=" + std::to_string(m));
  ModelFlow mf;
  mf.name = ModelName::TiltedProduct;
  mf.param = m;
  mf.q = 2 * m + 1;
  const int n = mf.q + 1;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  xi(0) = xi(1) = 1.0 / std::sqrt(2.0);
  mf.ambient = AmbientModel{product_ambient(m), xi};
  const TransverseSplit split = restrict_along(mf.ambient->curvature, xi);
  mf.r_res = split.r_res;
  mf.h = ONeillTensor(mf.q, kernel_first_blocks(m, 1.0 / std::sqrt(2.0)));
  mf.test_forms.push_back({"kahler", kahler_form(mf.h)});

  const CanonicalBlocks blocks = canonical_form(mf.h);
  expect(mf, "gamma0", 0.5, gamma0_of(mf.r_res), "reference");
  expect(mf, "b_max_sq", 0.5, blocks.b_max() * blocks.b_max(), "reference");
  // On this model Omega is not in the kernel of B^[2]: the quotient is 2m - 1.
  add_hopf_type_checks(mf, 0.0, 2.0 * m - 1.0, "closed_form");
  return mf;
}

ModelFlow strict_product(int m) {
  require(m >= 2, "strict_product: need m >= 2, got m=" + std::to_string(m));
  ModelFlow mf;
  mf.name = ModelName::StrictProduct;
  mf.param = m;
  mf.q = 2 * m + 1;
  const int n = mf.q + 1;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  xi(1) = 1.0;
  mf.ambient = AmbientModel{product_ambient(m), xi};
  const TransverseSplit split = restrict_along(mf.ambient->curvature, xi);
  mf.r_res = split.r_res;
  mf.h = ONeillTensor(mf.q, kernel_first_blocks(m, 1.0));
  mf.test_forms.push_back({"kahler", kahler_form(mf.h)});

  const CanonicalBlocks blocks = canonical_form(mf.h);
  const double bound = -2.0 * (2 * m - 1);
  expect(mf, "gamma0", 0.0, gamma0_of(mf.r_res), "reference");
  expect(mf, "b_max_sq", 1.0, blocks.b_max() * blocks.b_max(), "reference");
  add_hopf_type_checks(mf, bound, 0.0, "computed");
  const double min_eig = bochner_quadratic(split_curvature(mf.r_res, mf.h), 2).min_eigenvalue();
  expect(mf, "strict_margin_p2", -bound, min_eig - bound, "computed");
  return mf;
}

ModelFlow sphere_minimal(int n) {
  require(n >= 3 && n % 2 == 1,
          "sphere_minimal: need odd n >= 3 (q = n-1 must be even for h^2 = -Id), got n=" +
              std::to_string(n));
  ModelFlow mf;
  mf.name = ModelName::SphereMinimal;
  mf.param = n;
  mf.q = n - 1;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  xi(0) = 1.0;
  mf.ambient = AmbientModel{CurvatureOperator::scaled_identity(n, 1.0), xi};
  mf.r_res = restrict_along(mf.ambient->curvature, xi).r_res;
  const int m = mf.q / 2;
  mf.h = ONeillTensor::from_blocks(std::vector<double>(static_cast<std::size_t>(m), 1.0), mf.q);
  mf.test_forms.push_back({"kahler", kahler_form(mf.h)});

  const CanonicalBlocks blocks = canonical_form(mf.h);
  const ONeillCheck check = sphere_oneill_check(mf.ambient->curvature, mf.h);
  expect(mf, "oneill_residual", 0.0, check.residual, "reference");
  expect(mf, "b_min", 1.0, blocks.b.front(), "reference");
  expect(mf, "b_max", 1.0, blocks.b_max(), "reference");
  expect(mf, "gamma0", 1.0, gamma0_of(mf.r_res), "closed_form");
  return mf;
}

ModelFlow make_model(ModelName name, int param) {
  switch (name) {
    case ModelName::Constant: return constant_curvature(param, 1.0);
    case ModelName::Hopf: return hopf(param);
    case ModelName::TiltedProduct: return tilted_product(param);
    case ModelName::StrictProduct: return strict_product(param);
    case ModelName::SphereMinimal: return sphere_minimal(param);
  }
  throw std::invalid_argument("make_model: unknown model");
}

}  // namespace bochner
