#pragma once

#include <compare>
#include <map>
#include <string>

#include "nullboot/poly.hpp"

namespace nullboot {

/// x^m p^n with every x to the left of every p.
struct OpMonomial {
  unsigned m = 0;
  unsigned n = 0;

  unsigned degree() const { return m + n; }
  // Total degree first, then the power of x.
  friend auto operator<=>(const OpMonomial& a, const OpMonomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.m <=> b.m;
  }
  friend bool operator==(const OpMonomial&, const OpMonomial&) = default;
};

/// Normal-ordered polynomial in x and p, [x, p] = i.
class OpPoly {
 public:
  using Terms = std::map<OpMonomial, ParamPoly>;

  OpPoly() = default;
  OpPoly(ParamPoly c);  // NOLINT(google-explicit-constructor): the scalar c·1
  OpPoly(OpMonomial mono, ParamPoly c);

  static OpPoly x(unsigned m = 1) { return {OpMonomial{m, 0}, ParamPoly(1L)}; }
  static OpPoly p(unsigned n = 1) { return {OpMonomial{0, n}, ParamPoly(1L)}; }
  /// x^m (ip)^n = i^n x^m p^n.
  static OpPoly x_ip(unsigned m, unsigned n);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const ParamPoly& coeff(OpMonomial mono) const;
  unsigned degree() const;

  OpPoly& add_term(OpMonomial mono, const ParamPoly& c);
  OpPoly& operator+=(const OpPoly& o);
  OpPoly& operator-=(const OpPoly& o);
  OpPoly& operator*=(const ParamPoly& c);
  friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
  friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
  friend OpPoly operator-(OpPoly a) { return a *= ParamPoly(-1L); }
  friend OpPoly operator*(OpPoly a, const ParamPoly& c) { return a *= c; }
  friend OpPoly operator*(const ParamPoly& c, OpPoly a) { return a *= c; }
  /// Operator product, normal ordered.
  friend OpPoly operator*(const OpPoly& a, const OpPoly& b);

  friend bool operator==(const OpPoly& a, const OpPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const OpPoly& a, const OpPoly& b) { return !(a == b); }

  OpPoly substituted(const Bindings& b) const;
  /// Keeps the terms of total degree <= d.
  OpPoly truncated_degree(unsigned d) const;

  std::string str() const;

 private:
  Terms terms_;
};

OpPoly normal_product(const OpPoly& a, const OpPoly& b);
OpPoly commutator(const OpPoly& a, const OpPoly& b);
/// Reverses factor order and conjugates coefficients (x† = x, p† = p).
OpPoly adjoint(const OpPoly& a);
/// x → −x, p → −p.
OpPoly parity_apply(const OpPoly& a);
/// x → −x, p → p, i → −i (parity followed by time reversal).
OpPoly pt_apply(const OpPoly& a);

/// Operator-valued polynomial in the coupling: Σ_k g^k op_k.
class GradedOp {
 public:
  using Terms = std::map<int, OpPoly>;

  GradedOp() = default;
  GradedOp(OpPoly op, int grade = 0);  // NOLINT(google-explicit-constructor)

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const OpPoly& at(int grade) const;
  int min_grade() const { return terms_.begin()->first; }
  int max_grade() const { return terms_.rbegin()->first; }

  GradedOp& add(int grade, const OpPoly& op);
  GradedOp& operator+=(const GradedOp& o);
  GradedOp& operator-=(const GradedOp& o);
  friend GradedOp operator+(GradedOp a, const GradedOp& b) { return a += b; }
  friend GradedOp operator-(GradedOp a, const GradedOp& b) { return a -= b; }
  friend bool operator==(const GradedOp& a, const GradedOp& b) { return a.terms_ == b.terms_; }

  GradedOp scaled(const ParamPoly& c) const;
  GradedOp truncated(int order) const;

  std::string str() const;

 private:
  Terms terms_;
};

GradedOp graded_product(const GradedOp& a, const GradedOp& b, int order);
GradedOp graded_commutator(const GradedOp& a, const GradedOp& b, int order);
GradedOp graded_adjoint(const GradedOp& a);

/// e^G H e^{−G} = Σ_k ad_G^k(H)/k!, kept through g^order. G must have only
/// positive grades.
GradedOp graded_conjugate(const GradedOp& h, const GradedOp& g, int order);

// ---------------------------------------------------------------- ladder basis

/// a†^p a^q.
struct LadderMonomial {
  unsigned p = 0;  // power of a†
  unsigned q = 0;  // power of a
  int charge() const { return static_cast<int>(p) - static_cast<int>(q); }
  friend auto operator<=>(const LadderMonomial& x, const LadderMonomial& y) {
    if (auto c = (x.p + x.q) <=> (y.p + y.q); c != 0) return c;
    return x.p <=> y.p;
  }
  friend bool operator==(const LadderMonomial&, const LadderMonomial&) = default;
};

/// Normal-ordered polynomial in a† and a, [a, a†] = 1.
class LadderPoly {
 public:
  using Terms = std::map<LadderMonomial, ParamPoly>;

  LadderPoly() = default;
  LadderPoly(ParamPoly c);  // NOLINT(google-explicit-constructor)
  LadderPoly(LadderMonomial mono, ParamPoly c);

  static LadderPoly a(unsigned q = 1) { return {LadderMonomial{0, q}, ParamPoly(1L)}; }
  static LadderPoly adag(unsigned p = 1) { return {LadderMonomial{p, 0}, ParamPoly(1L)}; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const ParamPoly& coeff(LadderMonomial mono) const;

  LadderPoly& add_term(LadderMonomial mono, const ParamPoly& c);
  LadderPoly& operator+=(const LadderPoly& o);
  LadderPoly& operator-=(const LadderPoly& o);
  LadderPoly& operator*=(const ParamPoly& c);
  friend LadderPoly operator+(LadderPoly x, const LadderPoly& y) { return x += y; }
  friend LadderPoly operator-(LadderPoly x, const LadderPoly& y) { return x -= y; }
  friend LadderPoly operator-(LadderPoly x) { return x *= ParamPoly(-1L); }
  friend LadderPoly operator*(LadderPoly x, const ParamPoly& c) { return x *= c; }
  friend LadderPoly operator*(const LadderPoly& x, const LadderPoly& y);
  friend bool operator==(const LadderPoly& x, const LadderPoly& y) { return x.terms_ == y.terms_; }

  std::string str() const;

 private:
  Terms terms_;
};

LadderPoly ladder_commutator(const LadderPoly& x, const LadderPoly& y);
LadderPoly ladder_adjoint(const LadderPoly& x);

LadderPoly to_ladder(const OpPoly& a);
OpPoly from_ladder(const LadderPoly& l);

/// Splits L into pure-charge components keyed by charge.
std::map<int, LadderPoly> charge_decompose(const LadderPoly& l);
/// ⟨n|L|n⟩ as a polynomial in the level symbol; L must have charge 0 only.
ParamPoly diagonal_eigenvalue(const LadderPoly& l);

}  // namespace nullboot
