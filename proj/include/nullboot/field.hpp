#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace nullboot {

using Rat = mpq_class;

// Canonical "p/q" form; integers render without a denominator.
std::string to_string(const Rat& r);
Rat parse_rat(std::string_view text);

/// Exact element a + b·√2 + c·i + d·i·√2 of Q(i, √2).
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  FieldElem(Rat a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  FieldElem(Rat a, Rat b, Rat c, Rat d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static FieldElem sqrt2() { return {0, 1, 0, 0}; }
  static FieldElem imag() { return {0, 0, 1, 0}; }
  static FieldElem rational(long num, long den);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& c() const { return c_; }
  const Rat& d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_one() const { return a_ == 1 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_rational() const { return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_real() const { return sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_imaginary() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  FieldElem conj() const { return {a_, b_, -c_, -d_}; }
  FieldElem inverse() const;

  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
  friend FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inverse(); }
  friend FieldElem operator-(const FieldElem& x) { return {-x.a_, -x.b_, -x.c_, -x.d_}; }

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

  // Human-readable, e.g. "15/8", "-5/32*sqrt2", "(1 + i*sqrt2)".
  std::string str() const;

 private:
  Rat a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& z);

inline FieldElem conjugate(const FieldElem& z) { return z.conj(); }
inline FieldElem field_inverse(const FieldElem& z) { return z.inverse(); }

/// Square root of a rational inside Q(i, √2), when one exists there.
std::optional<FieldElem> sqrt_rational(const Rat& r);

}  // namespace nullboot
