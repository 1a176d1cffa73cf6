#pragma once

#include <map>
#include <set>
#include <vector>

#include "nullboot/poly.hpp"

namespace nullboot {

/// Σ coeffs[u]·u + constant = 0.
struct LinEq {
  std::map<Sym, ParamPoly> coeffs;
  ParamPoly constant;
};

struct LinSys {
  std::vector<Sym> unknowns;
  std::vector<LinEq> equations;
};

struct LinSolution {
  std::map<Sym, ParamPoly> solution;  // pivot unknowns in terms of free unknowns and parameters
  std::set<Sym> free;

  /// True when `u` was solved and its value involves no free unknown.
  bool determined(Sym u) const;
  Bindings bindings() const { return {solution.begin(), solution.end()}; }
};

/// Splits expressions that are linear in `unknowns` into a LinSys.
/// Throws ValidationError when an expression is not linear in them.
LinSys linear_system(const std::vector<ParamPoly>& exprs, const std::vector<Sym>& unknowns);

/// Fraction-free Gauss-Jordan elimination that keeps every solved unknown
/// polynomial in the parameters.
///
/// Pivots with constant coefficients are preferred (lowest unknown index
/// first, then lowest equation index). When only parameter-dependent pivots
/// remain, a pivot univariate in one parameter is used and rows are cleared
/// of their univariate content afterwards. If the final back-division is not
/// exact the solver tries to exchange the pivot for a free unknown with a
/// constant coefficient; failing that it throws NonPolynomialSolution.
/// A row reducing to 0 = nonzero throws InconsistentSystem.
LinSolution linsolve(const LinSys& sys);

/// Dense univariate polynomials over Q(i, √2), lowest degree first.
using UPoly = std::vector<FieldElem>;

/// Monic gcd (the zero polynomial only when both inputs are zero).
UPoly upoly_gcd(UPoly a, UPoly b);

/// Univariate gcd of two polynomials in the single symbol `s`, made monic.
ParamPoly univariate_gcd(const ParamPoly& a, const ParamPoly& b, Sym s);

}  // namespace nullboot
