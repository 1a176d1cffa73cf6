#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullboot/poly.hpp"

namespace nullboot {

/// Finite Laurent series Σ_{k=lo}^{lo+len-1} c_k g^k with ParamPoly coefficients.
///
/// A GSeries does not remember a truncation order of its own; every operation
/// that could produce terms beyond what the caller trusts takes the working
/// order explicitly.
class GSeries {
 public:
  GSeries() = default;
  GSeries(ParamPoly c) : GSeries(0, {std::move(c)}) {}  // NOLINT(google-explicit-constructor)
  GSeries(int lo, std::vector<ParamPoly> coeffs);

  static GSeries monomial(int power, ParamPoly c);

  bool is_zero() const { return coeffs_.empty(); }
  int lo() const { return lo_; }
  // Highest stored exponent; only meaningful for a nonzero series.
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<ParamPoly>& coeffs() const { return coeffs_; }

  /// Coefficient of g^k (zero outside the stored range).
  const ParamPoly& at(int k) const;

  GSeries& operator+=(const GSeries& o);
  GSeries& operator-=(const GSeries& o);
  friend GSeries operator+(GSeries x, const GSeries& y) { return x += y; }
  friend GSeries operator-(GSeries x, const GSeries& y) { return x -= y; }
  friend GSeries operator-(GSeries x);
  GSeries& operator*=(const ParamPoly& c);
  friend GSeries operator*(GSeries x, const ParamPoly& c) { return x *= c; }

  friend bool operator==(const GSeries& x, const GSeries& y) { return x.lo_ == y.lo_ && x.coeffs_ == y.coeffs_; }

  /// Multiplies by g^k.
  GSeries shifted(int k) const;
  /// Drops every term above g^order.
  GSeries truncated(int order) const;
  /// Applies a substitution to each coefficient.
  GSeries substituted(const Bindings& b) const;

  std::string str() const;

 private:
  void trim();

  int lo_ = 0;
  std::vector<ParamPoly> coeffs_;
};

/// Cauchy product truncated above g^work_order.
GSeries laurent_mul(const GSeries& x, const GSeries& y, int work_order);

/// x / (c g^s) for a single-term divisor with a constant coefficient.
GSeries divide_by_monomial(const GSeries& x, const FieldElem& c, int s);

}  // namespace nullboot
