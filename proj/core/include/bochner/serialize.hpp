#pragma once

#include <nlohmann/json.hpp>

#include "bochner/bounds.hpp"
#include "bochner/curvature.hpp"
#include "bochner/exterior.hpp"
#include "bochner/models.hpp"

// JSON encodings. Objects use nlohmann::ordered_json so field order is fixed;
// non-finite doubles become null. Matrices are {q, mat: [[row], ...]}.
namespace bochner {

using Json = nlohmann::ordered_json;

Json to_json(const Form& f);
Form form_from_json(const Json& j);

Json to_json(const CurvatureOperator& r);
CurvatureOperator curvature_from_json(const Json& j);

Json to_json(const ONeillTensor& h);
ONeillTensor oneill_from_json(const Json& j);

Json to_json(const CanonicalBlocks& c);
Json to_json(const BoundReport& r);
Json to_json(const EqualityStructure& s);
Json to_json(const EqualityScan& s);
Json to_json(const ModelFlow& m);

}  // namespace bochner
