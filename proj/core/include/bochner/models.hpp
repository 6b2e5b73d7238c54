#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bochner/curvature.hpp"
#include "bochner/exterior.hpp"

namespace bochner {

enum class ModelName { Constant, Hopf, TiltedProduct, StrictProduct, SphereMinimal };

std::string to_string(ModelName n);
/// Accepts the to_string spellings; nullopt otherwise.
std::optional<ModelName> parse_model_name(const std::string& s);

/// Where an expected value comes from:
///   "reference"   - a worked value of the model, reproduced numerically
///   "closed_form" - arithmetic on a formula
///   "computed"    - obtained by evaluating assembled operators
struct Expectation {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  std::string source;
  double tol = 1e-9;
  bool pass = false;
};

struct NamedForm {
  std::string name;
  Form form;
};

/// Ambient curvature operator on an n-frame together with the flow direction.
struct AmbientModel {
  CurvatureOperator curvature;
  Eigen::VectorXd xi;
};

struct TransverseSplit {
  Eigen::MatrixXd frame;  // n x (n-1), orthonormal, orthogonal to xi
  CurvatureOperator r_res;
};

/// Completes xi to an orthonormal basis by Gram-Schmidt over the coordinate
/// vectors, drops xi and restricts the ambient operator to Lambda^2 of the
/// complement.
TransverseSplit restrict_along(const CurvatureOperator& ambient, const Eigen::VectorXd& xi);

struct ModelFlow {
  ModelName name = ModelName::Constant;
  int param = 0;  // q for constant, m for the Hopf-type models, n for spheres
  int q = 0;
  CurvatureOperator r_res;
  ONeillTensor h;
  std::vector<NamedForm> test_forms;
  std::optional<AmbientModel> ambient;
  std::vector<Expectation> expected;

  const Form* test_form(const std::string& form_name) const;
  const Expectation* expectation(const std::string& key) const;
  bool self_check_passed() const;
};

/// R_res = gamma Id, h = 0. Requires q >= 2.
ModelFlow constant_curvature(int q, double gamma);
/// Transverse model of S^{2m+1} -> CP^m: q = 2m, R_res = Id, all b_i = 1.
ModelFlow hopf(int m);
/// S^1 x S^{2m+1} with xi = (u0 + xi_2)/sqrt2: q = 2m+1, b_i = 1/sqrt2.
ModelFlow tilted_product(int m);
/// S^1 x S^{2m+1} along the Hopf fibre: q = 2m+1, flat S^1 direction in Q.
ModelFlow strict_product(int m);
/// Round S^n with a minimal flow, h^2 = -Id: n odd >= 3, q = n-1.
ModelFlow sphere_minimal(int n);

/// Dispatch by name; param is q for constant (gamma = 1) and m or n otherwise.
ModelFlow make_model(ModelName name, int param);

/// Sum of f_{2i-1} ^ f_{2i} over the nonzero blocks of the canonical frame of h.
Form kahler_form(const ONeillTensor& h);

}  // namespace bochner
