#include "bochner/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace bochner {

namespace {

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json matrix_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(num(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_rows(const Json& rows) {
  if (!rows.is_array()) throw std::invalid_argument("matrix: expected an array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = n_rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw std::invalid_argument("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

Json to_json(const Form& f) {
  Json j;
  j["q"] = f.q();
  j["p"] = f.degree();
  j["coeffs"] = doubles(f.coeffs());
  return j;
}

Form form_from_json(const Json& j) {
  return Form(j.at("q").get<int>(), j.at("p").get<int>(), j.at("coeffs").get<std::vector<double>>());
}

Json to_json(const CurvatureOperator& r) {
  Json j;
  j["q"] = r.q();
  j["mat"] = matrix_rows(r.mat());
  return j;
}

CurvatureOperator curvature_from_json(const Json& j) {
  return CurvatureOperator(j.at("q").get<int>(), matrix_from_rows(j.at("mat")));
}

Json to_json(const ONeillTensor& h) {
  Json j;
  j["q"] = h.q();
  j["mat"] = matrix_rows(h.mat());
  return j;
}

ONeillTensor oneill_from_json(const Json& j) {
  return ONeillTensor(j.at("q").get<int>(), matrix_from_rows(j.at("mat")));
}

Json to_json(const CanonicalBlocks& c) {
  Json j;
  j["q"] = c.q;
  j["b"] = doubles(c.b);
  j["kernel_dim"] = c.kernel_dim;
  j["frame"] = matrix_rows(c.frame);
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["q"] = r.q;
  j["p"] = r.p;
  j["gamma0"] = num(r.gamma0);
  j["gamma1"] = num(r.gamma1);
  j["b"] = doubles(r.b);
  j["bound_ext"] = num(r.bound_ext);
  j["bound_total"] = num(r.bound_total);
  j["bound_lambda"] = r.bound_lambda ? num(*r.bound_lambda) : Json(nullptr);
  j["min_eig_ext"] = num(r.min_eig_ext);
  j["min_eig_total"] = num(r.min_eig_total);
  j["equality_ext"] = Json{{"flag", r.equality_ext.flag}, {"margin", num(r.equality_ext.margin)}};
  Json fams = Json::array();
  for (const auto& f : r.families) fams.push_back(Json{{"label", to_string(f.label)}, {"eigenvalue", num(f.eigenvalue)}});
  j["families"] = std::move(fams);
  return j;
}

Json to_json(const EqualityStructure& s) {
  Json j;
  j["i"] = s.i;
  j["j"] = s.j;
  j["bracket_norms"] = doubles({s.bracket_norms.begin(), s.bracket_norms.end()});
  j["brackets_vanish"] = s.brackets_vanish;
  j["decomposable"] = s.decomposable;
  j["omega1"] = to_json(s.omega1);
  j["omega2"] = to_json(s.omega2);
  j["mixed_residual"] = num(s.mixed_residual);
  j["reconstruction_error"] = num(s.reconstruction_error);
  j["contraction_residual"] = num(s.contraction_residual);
  j["in_nullspace"] = s.in_nullspace;
  j["nullspace_residual"] = num(s.nullspace_residual);
  j["consistent"] = s.consistent();
  return j;
}

Json to_json(const EqualityScan& s) {
  Json j;
  j["report"] = to_json(s.report);
  j["branch"] = to_string(s.branch);
  j["consistent"] = s.consistent;
  j["minimizer"] = to_json(s.minimizer_canonical);
  Json pairs = Json::array();
  for (const auto& d : s.pairs) {
    Json pj;
    pj["i"] = d.i;
    pj["j"] = d.j;
    pj["theta_plus"] = num(d.theta_plus);
    pj["theta_minus"] = num(d.theta_minus);
    pj["rho_plus"] = num(d.rho_plus);
    pj["rho_minus"] = num(d.rho_minus);
    pj["vanishing"] = d.vanishing;
    pj["structure"] = d.structure ? to_json(*d.structure) : Json(nullptr);
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

Json to_json(const ModelFlow& m) {
  Json j;
  j["name"] = to_string(m.name);
  j["param"] = m.param;
  j["q"] = m.q;
  j["R_res"] = to_json(m.r_res);
  j["h"] = to_json(m.h);
  Json forms = Json::object();
  for (const auto& f : m.test_forms) forms[f.name] = to_json(f.form);
  j["test_forms"] = std::move(forms);
  if (m.ambient) {
    Json xi = Json::array();
    for (Eigen::Index k = 0; k < m.ambient->xi.size(); ++k) xi.push_back(num(m.ambient->xi(k)));
    j["ambient"] = Json{{"curvature", to_json(m.ambient->curvature)}, {"xi", std::move(xi)}};
  } else {
    j["ambient"] = nullptr;
  }
  Json exp = Json::array();
  for (const auto& e : m.expected) {
    exp.push_back(Json{{"name", e.name},
                       {"expected", num(e.expected)},
                       {"computed", num(e.computed)},
                       {"source", e.source},
                       {"tol", num(e.tol)},
                       {"pass", e.pass}});
  }
  j["expected"] = std::move(exp);
  j["self_check"] = m.self_check_passed();
  return j;
}

}  // namespace bochner
