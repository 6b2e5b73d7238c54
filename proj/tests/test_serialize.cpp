#include <doctest.h>

#include <random>

#include "bochner/serialize.hpp"
#include "oracle.hpp"

using namespace bochner;

TEST_CASE("forms and operators round trip through JSON") {
  std::mt19937_64 rng(61);
  const Form w = oracle::random_form(rng, 5, 2);
  const Json jw = to_json(w);
  CHECK(jw.dump().rfind("{\"q\":5,\"p\":2,\"coeffs\":[", 0) == 0);
  CHECK((form_from_json(Json::parse(jw.dump())) - w).max_abs() == 0.0);

  const CurvatureOperator r(4, oracle::random_symmetric(rng, 6));
  const auto r2 = curvature_from_json(Json::parse(to_json(r).dump()));
  CHECK((r2.mat() - r.mat()).cwiseAbs().maxCoeff() == 0.0);

  const ONeillTensor h(5, oracle::random_skew(rng, 5));
  const auto h2 = oneill_from_json(Json::parse(to_json(h).dump()));
  CHECK((h2.mat() - h.mat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bound report field order and nulls") {
  const std::vector<double> b{1.0, 1.0};
  const auto rep = ext_bound_report(ONeillTensor::from_blocks(b, 4), 2);
  const Json j = to_json(rep);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"q", "p", "gamma0", "gamma1", "b", "bound_ext", "bound_total", "bound_lambda",
                                         "min_eig_ext", "min_eig_total", "equality_ext", "families"});
  CHECK(j["gamma0"].is_null());
  CHECK(j["bound_lambda"].is_null());
  CHECK(j["equality_ext"]["flag"] == true);
  CHECK(j["families"].size() == 6);
}

TEST_CASE("model export") {
  const Json j = to_json(hopf(2));
  CHECK(j["name"] == "hopf");
  CHECK(j["self_check"] == true);
  CHECK(j["test_forms"].contains("kahler"));
  CHECK(j["expected"][0]["source"] == "reference");
  CHECK(j["ambient"].is_null());
  CHECK(to_json(tilted_product(2))["ambient"]["xi"].size() == 6);
}
