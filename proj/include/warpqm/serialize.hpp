#pragma once

#include "warpqm/operator_expr.hpp"

#include <json.hpp>

namespace warpqm {

using Json = nlohmann::ordered_json;

/// {"num": "...", "den": "..."} with decimal strings.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json complex_json(const Complex& c);
Complex complex_from_json(const Json& j);

/// Canonical term list: {"terms": [{"coefficient", "constants", "x", "r", "rho", "p"}, ...], "text": ...}.
/// Term order follows the normal form, so equal expressions serialize to identical bytes.
Json to_json(const OperatorExpr& a);
Json to_json(const CoordFunction& f);

OperatorExpr operator_from_json(const Json& j);
CoordFunction function_from_json(const Json& j);

}  // namespace warpqm
