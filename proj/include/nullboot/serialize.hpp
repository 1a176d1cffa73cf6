#pragma once

#include <string>

#include "json.hpp"
#include "nullboot/bootstrap.hpp"
#include "nullboot/oracle.hpp"

namespace nullboot {

using Json = nlohmann::json;

// Rationals are written as canonical "p/q" strings ("3", "-15/8"), so every
// document is exact and byte-stable for equal inputs.

Json to_json(const Rat& r);
Json to_json(const FieldElem& z);
/// [{"vars": {"n": 2, ...}, "coeff": FieldElem}] in canonical term order.
Json to_json(const ParamPoly& p);
/// [{"m", "n", "coeff"}] in canonical monomial order.
Json to_json(const OpPoly& op);
/// [{"g_power", "op"}].
Json to_json(const GradedOp& op);
Json to_json(const MomentTable& table);
Json to_json(const ResidualReport& report);
Json to_json(const BootstrapSolution& solution);
Json to_json(const ComparisonReport& report);

/// Accepts "p/q" strings and integers.
Rat rat_from_json(const Json& j);
/// Accepts the four-component object (missing parts are 0), a rational
/// string, or an integer.
FieldElem field_from_json(const Json& j);
/// Accepts the ParamPoly array form or anything field_from_json accepts.
ParamPoly param_poly_from_json(const Json& j);
OpPoly op_poly_from_json(const Json& j);
/// Inverse of Sym::name().
Sym sym_from_name(const std::string& name);

/// Coefficients c0, c1, … of a polynomial in n with rational coefficients.
Json level_coeffs_json(const ParamPoly& p);

std::string latex(const FieldElem& z);
std::string latex(const ParamPoly& p);
std::string latex(const OpPoly& op);
/// Energies and ladder operators per order as a LaTeX fragment.
std::string latex(const BootstrapSolution& solution);

}  // namespace nullboot
