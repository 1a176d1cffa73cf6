#include "nullboot/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "nullboot/error.hpp"

namespace nullboot {

std::string Sym::name() const {
  switch (kind_) {
    case SymKind::Level: return "n";
    case SymKind::FullEnergy: return "E";
    case SymKind::Energy: return "E" + std::to_string(i_);
    case SymKind::ShiftedEnergy: return "Es" + std::to_string(i_);
    case SymKind::GroundEnergy: return "Eg" + std::to_string(i_);
    case SymKind::BasisCoeff: return "B" + std::to_string(i_) + "_" + std::to_string(j_);
    case SymKind::Moment: return "X" + std::to_string(i_);
    case SymKind::Ansatz:
      return "A" + std::to_string(i_) + "_" + std::to_string(j_) + "_" + std::to_string(k_);
    case SymKind::Aux: return "c" + std::to_string(i_);
  }
  return "?";
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Sym s, unsigned exp) {
  if (exp > 0) vars_.push_back({s, exp});
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& v : vars_) d += v.exp;
  return d;
}

unsigned Monomial::degree_in(Sym s) const {
  for (const auto& v : vars_)
    if (v.sym == s) return v.exp;
  return 0;
}

Monomial Monomial::without(Sym s) const {
  Monomial r;
  for (const auto& v : vars_)
    if (v.sym != s) r.vars_.push_back(v);
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& v : vars_)
    if (other.degree_in(v.sym) < v.exp) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial r;
  for (const auto& v : vars_) {
    unsigned e = v.exp - divisor.degree_in(v.sym);
    if (e > 0) r.vars_.push_back({v.sym, e});
  }
  return r;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
  if (x.vars_.empty()) return y;
  if (y.vars_.empty()) return x;
  Monomial r;
  auto i = x.vars_.begin();
  auto j = y.vars_.begin();
  while (i != x.vars_.end() && j != y.vars_.end()) {
    if (i->sym == j->sym) {
      r.vars_.push_back({i->sym, i->exp + j->exp});
      ++i;
      ++j;
    } else if (i->sym < j->sym) {
      r.vars_.push_back(*i++);
    } else {
      r.vars_.push_back(*j++);
    }
  }
  r.vars_.insert(r.vars_.end(), i, x.vars_.end());
  r.vars_.insert(r.vars_.end(), j, y.vars_.end());
  return r;
}

std::string Monomial::str() const {
  std::string s;
  for (const auto& v : vars_) {
    if (!s.empty()) s += "*";
    s += v.sym.name();
    if (v.exp > 1) s += "^" + std::to_string(v.exp);
  }
  return s.empty() ? "1" : s;
}

bool GradedLex::operator()(const Monomial& x, const Monomial& y) const {
  const unsigned dx = x.degree();
  const unsigned dy = y.degree();
  if (dx != dy) return dx < dy;
  auto i = x.vars().begin();
  auto j = y.vars().begin();
  while (i != x.vars().end() && j != y.vars().end()) {
    if (i->sym != j->sym) return j->sym < i->sym;  // y has the earlier symbol, so y is larger
    if (i->exp != j->exp) return i->exp < j->exp;
    ++i;
    ++j;
  }
  return i == x.vars().end() && j != y.vars().end();
}

// ---------------------------------------------------------------- ParamPoly

ParamPoly::ParamPoly(FieldElem c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), std::move(c));
}

ParamPoly::ParamPoly(Sym s) { terms_.emplace(Monomial(s), FieldElem(1)); }

ParamPoly::ParamPoly(const Monomial& m, FieldElem c) {
  if (!c.is_zero()) terms_.emplace(m, std::move(c));
}

FieldElem ParamPoly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? FieldElem() : it->second;
}

unsigned ParamPoly::total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

unsigned ParamPoly::degree_in(Sym s) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(s));
  return d;
}

bool ParamPoly::contains(Sym s) const {
  for (const auto& [m, c] : terms_)
    if (m.degree_in(s) > 0) return true;
  return false;
}

std::set<Sym> ParamPoly::symbols() const {
  std::set<Sym> out;
  for (const auto& [m, c] : terms_)
    for (const auto& v : m.vars()) out.insert(v.sym);
  return out;
}

ParamPoly ParamPoly::coeff(Sym s, unsigned e) const {
  ParamPoly r;
  for (const auto& [m, c] : terms_)
    if (m.degree_in(s) == e) r.terms_.emplace(m.without(s), c);
  return r;
}

std::vector<ParamPoly> ParamPoly::coeffs_in(Sym s) const {
  std::vector<ParamPoly> out(degree_in(s) + 1);
  for (const auto& [m, c] : terms_) out[m.degree_in(s)].terms_.emplace(m.without(s), c);
  return out;
}

ParamPoly ParamPoly::conj() const {
  ParamPoly r;
  for (const auto& [m, c] : terms_) {
    unsigned flips = 0;
    for (const auto& v : m.vars())
      if (v.sym.is_imaginary()) flips += v.exp;
    FieldElem cc = c.conj();
    if (flips % 2 == 1) cc = -cc;
    r.terms_.emplace(m, std::move(cc));
  }
  return r;
}

ParamPoly& ParamPoly::add_term(const Monomial& m, const FieldElem& c) {
  if (c.is_zero()) return *this;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamPoly operator-(ParamPoly x) {
  for (auto& [m, c] : x.terms_) c = -c;
  return x;
}

ParamPoly& ParamPoly::operator*=(const FieldElem& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else if (!c.is_one()) {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

ParamPoly operator*(const ParamPoly& x, const ParamPoly& y) {
  ParamPoly r;
  if (x.is_zero() || y.is_zero()) return r;
  if (x.is_constant()) return y * x.terms_.begin()->second;
  if (y.is_constant()) return x * y.terms_.begin()->second;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) r.add_term(mx * my, cx * cy);
  return r;
}

ParamPoly& ParamPoly::operator*=(const ParamPoly& o) {
  *this = *this * o;
  return *this;
}

ParamPoly ParamPoly::pow(unsigned e) const {
  ParamPoly r(FieldElem(1));
  for (unsigned k = 0; k < e; ++k) r *= *this;
  return r;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (divisor.is_constant()) return *this * divisor.constant_term().inverse();
  ParamPoly rem = *this;
  ParamPoly quot;
  const auto& [lm, lc] = divisor.leading();
  const FieldElem lc_inv = lc.inverse();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    if (!lm.divides(rm)) return std::nullopt;
    ParamPoly t(rm.quotient(lm), rc * lc_inv);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const auto& [m, c] = *it;
    if (m.is_one()) {
      os << c.str();
    } else if (c.is_one()) {
      os << m.str();
    } else {
      os << c.str() << "*" << m.str();
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.str(); }

ParamPoly poly_substitute(const ParamPoly& p, const Bindings& bindings) {
  // Reject cycles in the reference graph before expanding anything.
  enum class Mark { None, Active, Done };
  std::map<Sym, Mark> mark;
  std::function<void(Sym)> visit = [&](Sym s) {
    auto& st = mark[s];
    if (st == Mark::Done) return;
    if (st == Mark::Active) throw Error(ErrorCode::CyclicBinding, "binding cycle through " + s.name());
    st = Mark::Active;
    for (Sym t : bindings.at(s).symbols())
      if (bindings.count(t)) visit(t);
    mark[s] = Mark::Done;
  };
  for (const auto& [s, v] : bindings) visit(s);

  std::map<Sym, ParamPoly> resolved;
  std::function<const ParamPoly&(Sym)> resolve = [&](Sym s) -> const ParamPoly& {
    auto it = resolved.find(s);
    if (it != resolved.end()) return it->second;
    const ParamPoly& raw = bindings.at(s);
    ParamPoly value;
    bool needs = false;
    for (Sym t : raw.symbols()) needs = needs || bindings.count(t) > 0;
    if (!needs) {
      value = raw;
    } else {
      for (const auto& [m, c] : raw.terms()) {
        ParamPoly term(c);
        Monomial rest;
        for (const auto& v : m.vars()) {
          if (bindings.count(v.sym)) {
            term *= resolve(v.sym).pow(v.exp);
          } else {
            rest = rest * Monomial(v.sym, v.exp);
          }
        }
        value += term * ParamPoly(rest, FieldElem(1));
      }
    }
    return resolved.emplace(s, std::move(value)).first->second;
  };

  ParamPoly out;
  std::map<std::pair<Sym, unsigned>, ParamPoly> powers;
  for (const auto& [m, c] : p.terms()) {
    ParamPoly term(c);
    Monomial rest;
    for (const auto& v : m.vars()) {
      if (bindings.count(v.sym)) {
        auto key = std::make_pair(v.sym, v.exp);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, resolve(v.sym).pow(v.exp)).first;
        term *= it->second;
      } else {
        rest = rest * Monomial(v.sym, v.exp);
      }
    }
    if (!rest.is_one()) term *= ParamPoly(rest, FieldElem(1));
    out += term;
  }
  return out;
}

ParamPoly poly_in_level(const std::vector<Rat>& coeffs) {
  ParamPoly p;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Rat c = coeffs[k];
    c.canonicalize();
    p.add_term(Monomial(Sym::level(), static_cast<unsigned>(k)), FieldElem(std::move(c)));
  }
  return p;
}

std::vector<FieldElem> univariate_coeffs(const ParamPoly& p, Sym s) {
  std::vector<FieldElem> out(p.degree_in(s) + 1);
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != m.degree_in(s))
      throw Error(ErrorCode::ValidationError, "expected a polynomial in " + s.name() + " only: " + p.str());
    out[m.degree_in(s)] = c;
  }
  return out;
}

}  // namespace nullboot
