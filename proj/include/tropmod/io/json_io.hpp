#pragma once

#include <json.hpp>

#include "tropmod/moduli/moduli.hpp"
#include "tropmod/ratlin/quadform.hpp"
#include "tropmod/stackyfan/quotient.hpp"
#include "tropmod/stackyfan/stacky_fan.hpp"

namespace tropmod {

// Every number is written as an exact rational string ("p/q", or "p" when
// q = 1). Readers also accept JSON integers. Malformed input raises
// Error("bad_json").

nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const Integer& x);
nlohmann::json to_json(const RatVector& v);
nlohmann::json to_json(const IntVector& v);
nlohmann::json to_json(const RatMatrix& m);
nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const QuadForm& q);

Rational rational_from_json(const nlohmann::json& j);
Integer integer_from_json(const nlohmann::json& j);
RatVector rat_vector_from_json(const nlohmann::json& j);
IntVector int_vector_from_json(const nlohmann::json& j);
RatMatrix rat_matrix_from_json(const nlohmann::json& j);
IntMatrix int_matrix_from_json(const nlohmann::json& j);
/// A square symmetric matrix of rationals (Error("not_symmetric") otherwise).
QuadForm form_from_json(const nlohmann::json& j);

/// {"ambient_dim", "rays", "removed": [ray index lists]}
nlohmann::json cone_to_json(const IdealCone& c);
IdealCone cone_from_json(const nlohmann::json& j);

/// {"cells": [{"label", "cone"}], "maps": [{"source", "target", "matrix"}]}
nlohmann::json fan_to_json(const StackyFan& f);
StackyFan fan_from_json(const nlohmann::json& j);

/// {"generators", "moves": [{"generator", "source", "target", "matrix"}]}
nlohmann::json action_to_json(const AdmissibleAction& a);
AdmissibleAction action_from_json(const nlohmann::json& j);

/// Graphs with their keys and dimensions, plus the covering relations.
nlohmann::json catalogue_to_json(const Catalogue& c);

}  // namespace tropmod
