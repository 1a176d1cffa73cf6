#include "nullboot/field.hpp"

#include <sstream>

#include "nullboot/error.hpp"

namespace nullboot {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::CyclicBinding: return "CyclicBinding";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::NonPolynomialSolution: return "NonPolynomialSolution";
    case ErrorCode::IrreducibleMoment: return "IrreducibleMoment";
    case ErrorCode::SingularityNotCancelable: return "SingularityNotCancelable";
    case ErrorCode::UnderdeterminedBasis: return "UnderdeterminedBasis";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::InconsistentGroundSystem: return "InconsistentGroundSystem";
    case ErrorCode::NoPolynomialSolution: return "NoPolynomialSolution";
    case ErrorCode::ResidualFreedom: return "ResidualFreedom";
    case ErrorCode::NonDiagonal: return "NonDiagonal";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NonHermitianResult: return "NonHermitianResult";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  Rat r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  r.canonicalize();
  return r;
}

FieldElem FieldElem::rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return FieldElem(std::move(r));
}

namespace {

// acc += s * x * y, skipping zero factors (most components are zero in practice).
inline void acc_prod(Rat& acc, const Rat& x, const Rat& y, int s) {
  if (sgn(x) == 0 || sgn(y) == 0) return;
  if (s == 1) {
    acc += x * y;
  } else {
    acc += s * (x * y);
  }
}

}  // namespace

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  if (sgn(o.a_)) a_ += o.a_;
  if (sgn(o.b_)) b_ += o.b_;
  if (sgn(o.c_)) c_ += o.c_;
  if (sgn(o.d_)) d_ += o.d_;
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  if (sgn(o.a_)) a_ -= o.a_;
  if (sgn(o.b_)) b_ -= o.b_;
  if (sgn(o.c_)) c_ -= o.c_;
  if (sgn(o.d_)) d_ -= o.d_;
  return *this;
}

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
  // x = u + i v, y = w + i t with u, v, w, t in Q(√2); √2·√2 = 2, i·i = -1.
  FieldElem r;
  // real part, rational component: u.a w.a + 2 u.b w.b - v.a t.a - 2 v.b t.b
  acc_prod(r.a_, x.a_, y.a_, 1);
  acc_prod(r.a_, x.b_, y.b_, 2);
  acc_prod(r.a_, x.c_, y.c_, -1);
  acc_prod(r.a_, x.d_, y.d_, -2);
  // real part, √2 component
  acc_prod(r.b_, x.a_, y.b_, 1);
  acc_prod(r.b_, x.b_, y.a_, 1);
  acc_prod(r.b_, x.c_, y.d_, -1);
  acc_prod(r.b_, x.d_, y.c_, -1);
  // imaginary part: u t + v w
  acc_prod(r.c_, x.a_, y.c_, 1);
  acc_prod(r.c_, x.b_, y.d_, 2);
  acc_prod(r.c_, x.c_, y.a_, 1);
  acc_prod(r.c_, x.d_, y.b_, 2);
  acc_prod(r.d_, x.a_, y.d_, 1);
  acc_prod(r.d_, x.b_, y.c_, 1);
  acc_prod(r.d_, x.c_, y.b_, 1);
  acc_prod(r.d_, x.d_, y.a_, 1);
  return r;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  *this = *this * o;
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero field element");
  // z = u + i v; 1/z = conj(z) / (u² + v²) and u² + v² = s + t√2 lies in Q(√2).
  Rat s = a_ * a_ + 2 * b_ * b_ + c_ * c_ + 2 * d_ * d_;
  Rat t = 2 * (a_ * b_ + c_ * d_);
  Rat norm = s * s - 2 * t * t;  // (s + t√2)(s - t√2), nonzero since √2 is irrational
  FieldElem inv_w(s / norm, -t / norm, 0, 0);
  return conj() * inv_w;
}

namespace {

void append_component(std::ostringstream& os, const Rat& q, const char* unit, bool& first) {
  if (sgn(q) == 0) return;
  const bool neg = sgn(q) < 0;
  Rat mag = neg ? Rat(-q) : q;
  if (first) {
    if (neg) os << "-";
  } else {
    os << (neg ? " - " : " + ");
  }
  first = false;
  if (*unit == '\0') {
    os << mag.get_str();
  } else if (mag == 1) {
    os << unit;
  } else {
    os << mag.get_str() << "*" << unit;
  }
}

}  // namespace

std::string FieldElem::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  int parts = (sgn(a_) != 0) + (sgn(b_) != 0) + (sgn(c_) != 0) + (sgn(d_) != 0);
  if (parts > 1) os << "(";
  append_component(os, a_, "", first);
  append_component(os, b_, "sqrt2", first);
  append_component(os, c_, "i", first);
  append_component(os, d_, "i*sqrt2", first);
  if (parts > 1) os << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElem& z) { return os << z.str(); }

namespace {

std::optional<mpz_class> exact_sqrt(const mpz_class& v) {
  if (sgn(v) < 0) return std::nullopt;
  mpz_class r = sqrt(v);
  if (r * r != v) return std::nullopt;
  return r;
}

}  // namespace

std::optional<FieldElem> sqrt_rational(const Rat& r) {
  if (sgn(r) == 0) return FieldElem();
  const bool neg = sgn(r) < 0;
  Rat mag = neg ? Rat(-r) : r;
  const mpz_class& p = mag.get_num();
  const mpz_class& q = mag.get_den();
  // sqrt(p/q) = sqrt(pq)/q, or sqrt(2pq)·√2/(2q) when 2pq is the square.
  std::optional<FieldElem> root;
  if (auto s = exact_sqrt(p * q)) {
    Rat v(*s, q);
    v.canonicalize();
    root = FieldElem(v);
  } else if (auto s2 = exact_sqrt(2 * p * q)) {
    Rat v(*s2, 2 * q);
    v.canonicalize();
    root = FieldElem(0, v, 0, 0);
  }
  if (!root) return std::nullopt;
  return neg ? *root * FieldElem::imag() : *root;
}

}  // namespace nullboot
