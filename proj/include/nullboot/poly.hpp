#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nullboot/field.hpp"

namespace nullboot {

enum class SymKind : std::uint8_t {
  Level,          // n, the level index
  FullEnergy,     // E, the full (unexpanded) energy in recursion relations
  Energy,         // E<i>: order-i energy coefficient of the current level
  ShiftedEnergy,  // Es<i>: order-i energy of the level reached by a ladder step
  GroundEnergy,   // Eg<i>: order-i ground-state energy while it is being solved for
  BasisCoeff,     // B<deg>_<i>: order-i coefficient of the basis moment <x^deg>
  Moment,         // X<deg>: an unexpanded basis moment <x^deg>
  Ansatz,         // A<i>_<m>_<n>: ladder ansatz coefficient of x^m (ip)^n at order i
  Aux,            // c<i>: scratch unknowns
};

/// A named scalar symbol. Symbols are plain values; there is no registry.
class Sym {
 public:
  constexpr Sym() = default;

  static constexpr Sym level() { return Sym(SymKind::Level, 0, 0, 0); }
  static constexpr Sym full_energy() { return Sym(SymKind::FullEnergy, 0, 0, 0); }
  static constexpr Sym energy(int order) { return Sym(SymKind::Energy, order, 0, 0); }
  static constexpr Sym shifted_energy(int order) { return Sym(SymKind::ShiftedEnergy, order, 0, 0); }
  static constexpr Sym ground_energy(int order) { return Sym(SymKind::GroundEnergy, order, 0, 0); }
  static constexpr Sym basis_coeff(int degree, int order) {
    return Sym(SymKind::BasisCoeff, degree, order, 0);
  }
  static constexpr Sym moment(int degree) { return Sym(SymKind::Moment, degree, 0, 0); }
  static constexpr Sym ansatz(int order, int m, int n) { return Sym(SymKind::Ansatz, order, m, n); }
  static constexpr Sym aux(int index) { return Sym(SymKind::Aux, index, 0, 0); }

  constexpr SymKind kind() const { return kind_; }
  constexpr int i() const { return i_; }
  constexpr int j() const { return j_; }
  constexpr int k() const { return k_; }

  // Ansatz coefficients follow the convention that ladder operators are odd
  // under PT (as a = (x+ip)/√2 is): the coefficient of x^m (ip)^n is real for
  // odd m+n and purely imaginary for even m+n. Every other symbol is real.
  constexpr bool is_imaginary() const { return kind_ == SymKind::Ansatz && (j_ + k_) % 2 == 0; }

  std::string name() const;

  friend constexpr bool operator==(const Sym&, const Sym&) = default;
  friend constexpr auto operator<=>(const Sym&, const Sym&) = default;

 private:
  constexpr Sym(SymKind kind, int i, int j, int k)
      : kind_(kind), i_(static_cast<std::int16_t>(i)), j_(static_cast<std::int16_t>(j)),
        k_(static_cast<std::int16_t>(k)) {}

  SymKind kind_ = SymKind::Aux;
  std::int16_t i_ = 0;
  std::int16_t j_ = 0;
  std::int16_t k_ = 0;
};

struct VarPow {
  Sym sym;
  unsigned exp = 0;
  friend bool operator==(const VarPow&, const VarPow&) = default;
};

/// Power product of symbols, sorted by symbol, exponents positive.
class Monomial {
 public:
  using Storage = boost::container::small_vector<VarPow, 2>;

  Monomial() = default;
  explicit Monomial(Sym s, unsigned exp = 1);

  const Storage& vars() const { return vars_; }
  bool is_one() const { return vars_.empty(); }
  unsigned degree() const;
  unsigned degree_in(Sym s) const;
  Monomial without(Sym s) const;
  bool divides(const Monomial& other) const;
  Monomial quotient(const Monomial& divisor) const;  // requires divisor.divides(*this)

  friend Monomial operator*(const Monomial& x, const Monomial& y);
  friend bool operator==(const Monomial& x, const Monomial& y) { return x.vars_ == y.vars_; }

  std::string str() const;

 private:
  Storage vars_;
};

// Graded lexicographic: total degree first, then the exponent of the
// earliest symbol (in Sym order) decides.
struct GradedLex {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

/// Multivariate polynomial over Q(i, √2) in named symbols.
class ParamPoly {
 public:
  using Terms = std::map<Monomial, FieldElem, GradedLex>;

  ParamPoly() = default;
  ParamPoly(FieldElem c);  // NOLINT(google-explicit-constructor)
  ParamPoly(long c) : ParamPoly(FieldElem(c)) {}  // NOLINT(google-explicit-constructor)
  ParamPoly(Sym s);  // NOLINT(google-explicit-constructor)
  ParamPoly(const Monomial& m, FieldElem c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  FieldElem constant_term() const;
  std::size_t size() const { return terms_.size(); }

  unsigned total_degree() const;
  unsigned degree_in(Sym s) const;
  bool contains(Sym s) const;
  std::set<Sym> symbols() const;

  // Leading term in graded-lex order.
  const std::pair<const Monomial, FieldElem>& leading() const { return *terms_.rbegin(); }

  /// Coefficient of s^e, as a polynomial in the remaining symbols.
  ParamPoly coeff(Sym s, unsigned e) const;
  /// Coefficients of s^0, s^1, ..., s^deg.
  std::vector<ParamPoly> coeffs_in(Sym s) const;

  ParamPoly conj() const;  // conjugates coefficients, and imaginary symbols flip sign
  ParamPoly& add_term(const Monomial& m, const FieldElem& c);

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly& operator*=(const FieldElem& c);
  ParamPoly& operator*=(const ParamPoly& o);

  friend ParamPoly operator+(ParamPoly x, const ParamPoly& y) { return x += y; }
  friend ParamPoly operator-(ParamPoly x, const ParamPoly& y) { return x -= y; }
  friend ParamPoly operator-(ParamPoly x);
  friend ParamPoly operator*(const ParamPoly& x, const ParamPoly& y);
  friend ParamPoly operator*(ParamPoly x, const FieldElem& c) { return x *= c; }
  friend ParamPoly operator*(const FieldElem& c, ParamPoly x) { return x *= c; }

  friend bool operator==(const ParamPoly& x, const ParamPoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const ParamPoly& x, const ParamPoly& y) { return !(x == y); }

  ParamPoly pow(unsigned e) const;

  /// Exact quotient, or nullopt when `divisor` does not divide this polynomial.
  std::optional<ParamPoly> divide_exact(const ParamPoly& divisor) const;

  std::string str() const;

 private:
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const ParamPoly& p);

using Bindings = std::map<Sym, ParamPoly>;

/// Substitutes bound symbols until none remain. Bindings may refer to each
/// other as long as the reference graph is acyclic (CyclicBinding otherwise).
ParamPoly poly_substitute(const ParamPoly& p, const Bindings& bindings);

/// Polynomial in the level symbol n: c0 + c1 n + ... from a coefficient list.
ParamPoly poly_in_level(const std::vector<Rat>& coeffs);

/// Coefficients of a polynomial in `s` whose coefficients are rational
/// constants; throws ValidationError otherwise.
std::vector<FieldElem> univariate_coeffs(const ParamPoly& p, Sym s);

}  // namespace nullboot
