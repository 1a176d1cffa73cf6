#include "nullboot/series.hpp"

#include <sstream>

namespace nullboot {

namespace {
const ParamPoly kZero;
}

GSeries::GSeries(int lo, std::vector<ParamPoly> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) { trim(); }

GSeries GSeries::monomial(int power, ParamPoly c) { return GSeries(power, {std::move(c)}); }

void GSeries::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    lo_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) lo_ = 0;
}

const ParamPoly& GSeries::at(int k) const {
  if (coeffs_.empty() || k < lo_ || k > hi()) return kZero;
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

GSeries& GSeries::operator+=(const GSeries& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(lo_, o.lo_);
  const int hi = std::max(this->hi(), o.hi());
  std::vector<ParamPoly> out(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) {
    auto& slot = out[static_cast<std::size_t>(k - lo)];
    slot = at(k);
    slot += o.at(k);
  }
  lo_ = lo;
  coeffs_ = std::move(out);
  trim();
  return *this;
}

GSeries& GSeries::operator-=(const GSeries& o) { return *this += -o; }

GSeries operator-(GSeries x) {
  for (auto& c : x.coeffs_) c = -c;
  return x;
}

GSeries& GSeries::operator*=(const ParamPoly& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

GSeries GSeries::shifted(int k) const {
  GSeries r = *this;
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

GSeries GSeries::truncated(int order) const {
  if (is_zero() || hi() <= order) return *this;
  if (order < lo_) return {};
  return GSeries(lo_, std::vector<ParamPoly>(coeffs_.begin(), coeffs_.begin() + (order - lo_ + 1)));
}

GSeries GSeries::substituted(const Bindings& b) const {
  std::vector<ParamPoly> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(poly_substitute(c, b));
  return GSeries(lo_, std::move(out));
}

std::string GSeries::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = lo_; k <= hi(); ++k) {
    const auto& c = at(k);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (k != 0) os << "*g^" << k;
  }
  return os.str();
}

GSeries laurent_mul(const GSeries& x, const GSeries& y, int work_order) {
  if (x.is_zero() || y.is_zero()) return {};
  const int lo = x.lo() + y.lo();
  const int hi = std::min(x.hi() + y.hi(), work_order);
  if (hi < lo) return {};
  std::vector<ParamPoly> out(static_cast<std::size_t>(hi - lo + 1));
  for (int i = x.lo(); i <= x.hi(); ++i) {
    const auto& xi = x.at(i);
    if (xi.is_zero()) continue;
    for (int j = y.lo(); j <= y.hi() && i + j <= hi; ++j) {
      const auto& yj = y.at(j);
      if (yj.is_zero()) continue;
      out[static_cast<std::size_t>(i + j - lo)] += xi * yj;
    }
  }
  return GSeries(lo, std::move(out));
}

GSeries divide_by_monomial(const GSeries& x, const FieldElem& c, int s) {
  GSeries r = x.shifted(-s);
  return r * ParamPoly(c.inverse());
}

}  // namespace nullboot
