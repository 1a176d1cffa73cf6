#include "nullboot/weyl.hpp"

#include <sstream>
#include <vector>

#include "nullboot/error.hpp"

namespace nullboot {

namespace {

const ParamPoly kZero;

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class falling(unsigned n, unsigned k) {
  mpz_class r = 1;
  for (unsigned j = 0; j < k; ++j) r *= n - j;
  return r;
}

// (−i)^k
FieldElem minus_i_pow(unsigned k) {
  switch (k % 4) {
    case 0: return FieldElem(1);
    case 1: return -FieldElem::imag();
    case 2: return FieldElem(-1);
    default: return FieldElem::imag();
  }
}

FieldElem i_pow(unsigned k) { return minus_i_pow(k).conj(); }

FieldElem inv_sqrt2() { return FieldElem(0, Rat(1, 2), 0, 0); }

template <class Map, class Key>
void accumulate(Map& terms, const Key& key, const ParamPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

// ---------------------------------------------------------------- OpPoly

OpPoly::OpPoly(ParamPoly c) {
  if (!c.is_zero()) terms_.emplace(OpMonomial{}, std::move(c));
}

OpPoly::OpPoly(OpMonomial mono, ParamPoly c) {
  if (!c.is_zero()) terms_.emplace(mono, std::move(c));
}

OpPoly OpPoly::x_ip(unsigned m, unsigned n) { return {OpMonomial{m, n}, ParamPoly(i_pow(n))}; }

const ParamPoly& OpPoly::coeff(OpMonomial mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? kZero : it->second;
}

unsigned OpPoly::degree() const {
  unsigned d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
  return d;
}

OpPoly& OpPoly::add_term(OpMonomial mono, const ParamPoly& c) {
  accumulate(terms_, mono, c);
  return *this;
}

OpPoly& OpPoly::operator+=(const OpPoly& o) {
  for (const auto& [mono, c] : o.terms_) accumulate(terms_, mono, c);
  return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& o) {
  for (const auto& [mono, c] : o.terms_) accumulate(terms_, mono, -c);
  return *this;
}

OpPoly& OpPoly::operator*=(const ParamPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

OpPoly operator*(const OpPoly& a, const OpPoly& b) {
  OpPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const ParamPoly cab = ca * cb;
      // p^b x^c = Σ_k C(b,k) (−i)^k c!/(c−k)! x^{c−k} p^{b−k}
      const unsigned kmax = std::min(ma.n, mb.m);
      for (unsigned k = 0; k <= kmax; ++k) {
        FieldElem f = minus_i_pow(k) * FieldElem(Rat(binomial(ma.n, k) * falling(mb.m, k)));
        accumulate(r.terms_, OpMonomial{ma.m + mb.m - k, ma.n + mb.n - k}, cab * f);
      }
    }
  }
  return r;
}

OpPoly OpPoly::substituted(const Bindings& b) const {
  OpPoly r;
  for (const auto& [mono, c] : terms_) accumulate(r.terms_, mono, poly_substitute(c, b));
  return r;
}

OpPoly OpPoly::truncated_degree(unsigned d) const {
  OpPoly r;
  for (const auto& [mono, c] : terms_)
    if (mono.degree() <= d) r.terms_.emplace(mono, c);
  return r;
}

std::string OpPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (mono.m > 0) os << "*x" << (mono.m > 1 ? "^" + std::to_string(mono.m) : "");
    if (mono.n > 0) os << "*p" << (mono.n > 1 ? "^" + std::to_string(mono.n) : "");
  }
  return os.str();
}

OpPoly normal_product(const OpPoly& a, const OpPoly& b) { return a * b; }

OpPoly commutator(const OpPoly& a, const OpPoly& b) { return a * b - b * a; }

OpPoly adjoint(const OpPoly& a) {
  OpPoly r;
  for (const auto& [mono, c] : a.terms()) r += OpPoly::p(mono.n) * OpPoly::x(mono.m) * c.conj();
  return r;
}

OpPoly parity_apply(const OpPoly& a) {
  OpPoly r;
  for (const auto& [mono, c] : a.terms()) r.add_term(mono, mono.degree() % 2 ? -c : c);
  return r;
}

OpPoly pt_apply(const OpPoly& a) {
  OpPoly r;
  for (const auto& [mono, c] : a.terms()) r.add_term(mono, mono.m % 2 ? -c.conj() : c.conj());
  return r;
}

// ---------------------------------------------------------------- GradedOp

namespace {
const OpPoly kZeroOp;
}

GradedOp::GradedOp(OpPoly op, int grade) {
  if (!op.is_zero()) terms_.emplace(grade, std::move(op));
}

const OpPoly& GradedOp::at(int grade) const {
  auto it = terms_.find(grade);
  return it == terms_.end() ? kZeroOp : it->second;
}

GradedOp& GradedOp::add(int grade, const OpPoly& op) {
  if (op.is_zero()) return *this;
  auto& slot = terms_[grade];
  slot += op;
  if (slot.is_zero()) terms_.erase(grade);
  return *this;
}

GradedOp& GradedOp::operator+=(const GradedOp& o) {
  for (const auto& [k, op] : o.terms_) add(k, op);
  return *this;
}

GradedOp& GradedOp::operator-=(const GradedOp& o) {
  for (const auto& [k, op] : o.terms_) add(k, -op);
  return *this;
}

GradedOp GradedOp::scaled(const ParamPoly& c) const {
  GradedOp r;
  for (const auto& [k, op] : terms_) r.add(k, op * c);
  return r;
}

GradedOp GradedOp::truncated(int order) const {
  GradedOp r;
  for (const auto& [k, op] : terms_)
    if (k <= order) r.terms_.emplace(k, op);
  return r;
}

std::string GradedOp::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, op] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "g^" << k << "*[" << op.str() << "]";
  }
  return os.str();
}

GradedOp graded_product(const GradedOp& a, const GradedOp& b, int order) {
  GradedOp r;
  for (const auto& [ka, oa] : a.terms())
    for (const auto& [kb, ob] : b.terms())
      if (ka + kb <= order) r.add(ka + kb, oa * ob);
  return r;
}

GradedOp graded_commutator(const GradedOp& a, const GradedOp& b, int order) {
  GradedOp r;
  for (const auto& [ka, oa] : a.terms())
    for (const auto& [kb, ob] : b.terms())
      if (ka + kb <= order) r.add(ka + kb, commutator(oa, ob));
  return r;
}

GradedOp graded_adjoint(const GradedOp& a) {
  GradedOp r;
  for (const auto& [k, op] : a.terms()) r.add(k, adjoint(op));
  return r;
}

GradedOp graded_conjugate(const GradedOp& h, const GradedOp& g, int order) {
  if (!g.is_zero() && g.min_grade() < 1)
    throw Error(ErrorCode::ValidationError, "conjugating generator must carry positive g-grades");
  GradedOp result = h.truncated(order);
  GradedOp term = result;
  for (long k = 1; !term.is_zero() && !g.is_zero(); ++k) {
    term = graded_commutator(g, term, order).scaled(ParamPoly(FieldElem::rational(1, k)));
    result += term;
  }
  return result;
}

// ---------------------------------------------------------------- LadderPoly

LadderPoly::LadderPoly(ParamPoly c) {
  if (!c.is_zero()) terms_.emplace(LadderMonomial{}, std::move(c));
}

LadderPoly::LadderPoly(LadderMonomial mono, ParamPoly c) {
  if (!c.is_zero()) terms_.emplace(mono, std::move(c));
}

const ParamPoly& LadderPoly::coeff(LadderMonomial mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? kZero : it->second;
}

LadderPoly& LadderPoly::add_term(LadderMonomial mono, const ParamPoly& c) {
  accumulate(terms_, mono, c);
  return *this;
}

LadderPoly& LadderPoly::operator+=(const LadderPoly& o) {
  for (const auto& [mono, c] : o.terms_) accumulate(terms_, mono, c);
  return *this;
}

LadderPoly& LadderPoly::operator-=(const LadderPoly& o) {
  for (const auto& [mono, c] : o.terms_) accumulate(terms_, mono, -c);
  return *this;
}

LadderPoly& LadderPoly::operator*=(const ParamPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, v] : terms_) v *= c;
  return *this;
}

LadderPoly operator*(const LadderPoly& x, const LadderPoly& y) {
  LadderPoly r;
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) {
      const ParamPoly cxy = cx * cy;
      // a^q a†^r = Σ_k C(q,k) C(r,k) k! a†^{r−k} a^{q−k}
      const unsigned kmax = std::min(mx.q, my.p);
      for (unsigned k = 0; k <= kmax; ++k) {
        mpz_class w = binomial(mx.q, k) * binomial(my.p, k) * falling(k, k);
        accumulate(r.terms_, LadderMonomial{mx.p + my.p - k, mx.q + my.q - k}, cxy * FieldElem(Rat(w)));
      }
    }
  }
  return r;
}

std::string LadderPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (mono.p > 0) os << "*ad" << (mono.p > 1 ? "^" + std::to_string(mono.p) : "");
    if (mono.q > 0) os << "*a" << (mono.q > 1 ? "^" + std::to_string(mono.q) : "");
  }
  return os.str();
}

LadderPoly ladder_commutator(const LadderPoly& x, const LadderPoly& y) { return x * y - y * x; }

LadderPoly ladder_adjoint(const LadderPoly& x) {
  LadderPoly r;
  for (const auto& [mono, c] : x.terms()) r.add_term(LadderMonomial{mono.q, mono.p}, c.conj());
  return r;
}

namespace {

// Caches successive powers of a fixed element within a single call.
template <class P>
class PowerCache {
 public:
  explicit PowerCache(P base) : powers_{P(ParamPoly(1L)), std::move(base)} {}
  const P& operator()(unsigned k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[k];
  }

 private:
  std::vector<P> powers_;
};

}  // namespace

LadderPoly to_ladder(const OpPoly& a) {
  // x = (a + a†)/√2, p = i(a† − a)/√2
  const ParamPoly s = inv_sqrt2();
  PowerCache<LadderPoly> xs((LadderPoly::a() + LadderPoly::adag()) * s);
  PowerCache<LadderPoly> ps((LadderPoly::adag() - LadderPoly::a()) * ParamPoly(FieldElem::imag() * inv_sqrt2()));
  LadderPoly r;
  for (const auto& [mono, c] : a.terms()) r += (xs(mono.m) * ps(mono.n)) * c;
  return r;
}

OpPoly from_ladder(const LadderPoly& l) {
  // a = (x + ip)/√2, a† = (x − ip)/√2
  const ParamPoly s = inv_sqrt2();
  PowerCache<OpPoly> as((OpPoly::x() + OpPoly::x_ip(0, 1)) * s);
  PowerCache<OpPoly> ads((OpPoly::x() - OpPoly::x_ip(0, 1)) * s);
  OpPoly r;
  for (const auto& [mono, c] : l.terms()) r += (ads(mono.p) * as(mono.q)) * c;
  return r;
}

std::map<int, LadderPoly> charge_decompose(const LadderPoly& l) {
  std::map<int, LadderPoly> out;
  for (const auto& [mono, c] : l.terms()) out[mono.charge()].add_term(mono, c);
  return out;
}

ParamPoly diagonal_eigenvalue(const LadderPoly& l) {
  const ParamPoly n = Sym::level();
  ParamPoly r;
  for (const auto& [mono, c] : l.terms()) {
    if (mono.charge() != 0)
      throw Error(ErrorCode::NonDiagonal, "term of charge " + std::to_string(mono.charge()) + " in diagonal evaluation");
    ParamPoly ff(1L);
    for (unsigned j = 0; j < mono.p; ++j) ff *= n - ParamPoly(static_cast<long>(j));
    r += ff * c;
  }
  return r;
}

}  // namespace nullboot
