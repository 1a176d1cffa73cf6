#include "nullboot/moments.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "nullboot/error.hpp"
#include "nullboot/linsolve.hpp"

namespace nullboot {

namespace {

ParamPoly rat(long num, long den = 1) { return ParamPoly(FieldElem::rational(num, den)); }
const FieldElem kI = FieldElem::imag();
const Sym kE = Sym::full_energy();

GradedOp cubic_q() {
  OpPoly x = OpPoly::x(), p = OpPoly::p();
  OpPoly q1 = -(OpPoly::p(3) * rat(4, 3) + x * p * x * rat(2));
  OpPoly q3 = OpPoly::p(5) * rat(128, 15) + x * OpPoly::p(3) * x * rat(40, 3) + OpPoly::x(2) * p * OpPoly::x(2) * rat(8) -
              p * rat(32);
  GradedOp q(q1, 1);
  q.add(3, q3);
  return q;
}

bool x_only(const OpPoly& a) {
  return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) { return t.first.n == 0; });
}

}  // namespace

// ---------------------------------------------------------------- ProblemSpec

ProblemSpec ProblemSpec::sextic() {
  ProblemSpec s;
  s.label = "sextic";
  s.potential_base = OpPoly::x(2) * rat(1, 2);
  s.perturbation = OpPoly::x(6);
  s.ansatz_degrees = {1, 5, 9};
  return s;
}

ProblemSpec ProblemSpec::shifted() {
  ProblemSpec s;
  s.label = "shifted";
  s.potential_base = OpPoly::x(2) * rat(1, 2);
  s.perturbation = OpPoly::x() * ParamPoly(kI);
  s.hermitian = false;
  s.parity_even = false;
  s.ansatz_degrees = {1, 3, 3};
  s.similarity_generator = GradedOp(OpPoly::p(), 1);
  s.metric_generator = GradedOp(OpPoly::p() * rat(2), 1);
  // [p, x] is a number, so both conjugations terminate.
  s.generator_order = std::numeric_limits<int>::max();
  return s;
}

ProblemSpec ProblemSpec::cubic() {
  ProblemSpec s;
  s.label = "cubic";
  s.potential_base = OpPoly::x(2) * rat(1, 2);
  s.perturbation = OpPoly::x(3) * ParamPoly(kI);
  s.hermitian = false;
  s.parity_even = false;
  s.ansatz_degrees = {1, 3, 5};
  s.similarity_generator = cubic_q().scaled(rat(-1, 2));
  s.metric_generator = cubic_q().scaled(rat(-1));
  s.generator_order = 3;
  return s;
}

GradedOp ProblemSpec::hamiltonian() const {
  GradedOp h(OpPoly::p(2) * rat(1, 2) + potential_base);
  h.add(1, perturbation);
  return h;
}

unsigned ProblemSpec::ansatz_degree(int order) const {
  if (order >= 0 && static_cast<std::size_t>(order) < ansatz_degrees.size()) return ansatz_degrees[order];
  unsigned d = perturbation_degree();
  return 1 + static_cast<unsigned>(order) * (d > 0 ? d - 1 : 0);
}

void ProblemSpec::validate() const {
  if (!x_only(potential_base) || !x_only(perturbation))
    throw Error(ErrorCode::ValidationError, label + ": the potential must be a polynomial in x only");
  if (potential_base != OpPoly::x(2) * rat(1, 2))
    throw Error(ErrorCode::ValidationError, label + ": the unperturbed potential must be x^2/2");
  if (perturbation.is_zero()) throw Error(ErrorCode::ValidationError, label + ": empty perturbation");
  for (const auto& [mono, c] : perturbation.terms()) {
    if (!c.is_constant())
      throw Error(ErrorCode::ValidationError, label + ": perturbation coefficients must be numbers");
    FieldElem v = c.constant_term();
    if (hermitian && !v.is_real())
      throw Error(ErrorCode::ValidationError, label + ": a Hermitian perturbation needs real coefficients");
    if (parity_even && mono.m % 2 != 0)
      throw Error(ErrorCode::ValidationError, label + ": parity_even perturbation has an odd power of x");
  }
  if (!hermitian && pt_apply(perturbation) != perturbation)
    throw Error(ErrorCode::ValidationError, label + ": perturbation is not PT-invariant");
}

// ---------------------------------------------------------------- MomentExpr

const ParamPoly& MomentExpr::coeff(int grade, MomentKey key) const {
  static const ParamPoly zero;
  auto it = terms_.find({grade, key});
  return it == terms_.end() ? zero : it->second;
}

MomentExpr& MomentExpr::add(int grade, MomentKey key, const ParamPoly& c) {
  if (c.is_zero()) return *this;
  auto [it, fresh] = terms_.try_emplace({grade, key}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

MomentExpr& MomentExpr::operator+=(const MomentExpr& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

MomentExpr MomentExpr::scaled(const ParamPoly& c, int grade_shift) const {
  MomentExpr r;
  for (const auto& [k, v] : terms_) r.add(k.first + grade_shift, k.second, v * c);
  return r;
}

MomentExpr MomentExpr::expectation(const GradedOp& a) {
  MomentExpr r;
  for (const auto& [grade, op] : a.terms())
    for (const auto& [mono, c] : op.terms()) r.add(grade, mono, c);
  return r;
}

std::string MomentExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (k.first != 0) os << "*g^" << k.first;
    os << "*<x^" << k.second.m << " p^" << k.second.n << ">";
  }
  return os.str();
}

bool MomentRelation::proportional_to(const MomentExpr& other) const {
  if (expr.is_zero() || other.is_zero()) return expr.is_zero() && other.is_zero();
  if (expr.terms().size() != other.terms().size()) return false;
  const auto& [k0, c0] = *expr.terms().begin();
  const ParamPoly& o0 = other.coeff(k0.first, k0.second);
  if (o0.is_zero()) return false;
  // expr·o0 == other·c0 term by term
  for (const auto& [k, c] : expr.terms())
    if (c * o0 != other.coeff(k.first, k.second) * c0) return false;
  return true;
}

std::string to_string(MomentRelation::Family f) {
  switch (f) {
    case MomentRelation::Family::MixedFirst: return "mixed_first";
    case MomentRelation::Family::PureX: return "pure_x";
    case MomentRelation::Family::PowerReduce: return "power_reduce";
    case MomentRelation::Family::PFirst: return "p_first";
    case MomentRelation::Family::PSecond: return "p_second";
    case MomentRelation::Family::PureP: return "pure_p";
  }
  return "?";
}

// ---------------------------------------------------------------- recursions

namespace {

// ⟨[H, O]⟩ = 0
MomentExpr commutator_identity(const ProblemSpec& problem, const OpPoly& o) {
  return MomentExpr::expectation(graded_commutator(problem.hamiltonian(), GradedOp(o), 1));
}

// ⟨O H⟩ − E⟨O⟩ = 0
MomentExpr energy_identity(const ProblemSpec& problem, const OpPoly& o) {
  GradedOp oh = graded_product(GradedOp(o), problem.hamiltonian(), 1);
  oh -= GradedOp(o * ParamPoly(kE));
  return MomentExpr::expectation(oh);
}

// Solves expr = 0 for the grade-0 term ⟨key⟩ (constant coefficient required):
// ⟨key⟩ = returned expression.
std::optional<MomentExpr> solve_for(const MomentExpr& expr, MomentKey key) {
  const ParamPoly& c = expr.coeff(0, key);
  if (c.is_zero() || !c.is_constant()) return std::nullopt;
  MomentExpr rest = expr;
  rest.add(0, key, -c);
  return rest.scaled(ParamPoly(-field_inverse(c.constant_term())));
}

// Replaces every term that has a rule until no rule applies.
MomentExpr rewrite(MomentExpr expr, const std::function<std::optional<MomentExpr>(MomentKey)>& rule) {
  for (int pass = 0; pass < 10000; ++pass) {
    std::optional<MomentExpr::Key> hit;
    std::optional<MomentExpr> repl;
    // Highest key first so each replacement only introduces lower keys.
    for (auto it = expr.terms().rbegin(); it != expr.terms().rend(); ++it) {
      if (auto r = rule(it->first.second)) {
        hit = it->first;
        repl = std::move(r);
        break;
      }
    }
    if (!hit) return expr;
    ParamPoly c = expr.coeff(hit->first, hit->second);
    expr.add(hit->first, hit->second, -c);
    expr += repl->scaled(c, hit->first);
  }
  throw Error(ErrorCode::ValidationError, "moment rewriting did not terminate");
}

}  // namespace

MomentRelation recursion(const ProblemSpec& problem, MomentRelation::Family family, const std::vector<unsigned>& params) {
  using F = MomentRelation::Family;
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw Error(ErrorCode::ValidationError, "wrong number of recursion parameters");
  };
  MomentRelation r{family, params, {}};
  switch (family) {
    case F::MixedFirst:
      need(1);
      r.expr = commutator_identity(problem, OpPoly::x(params[0] + 1));
      break;
    case F::PowerReduce:
      need(2);
      if (params[1] < 2) throw Error(ErrorCode::ValidationError, "power reduction needs n >= 2");
      r.expr = energy_identity(problem, OpPoly({params[0], params[1] - 2}, ParamPoly(1L)));
      break;
    case F::PFirst:
      need(1);
      r.expr = commutator_identity(problem, OpPoly::p(params[0] + 1));
      break;
    case F::PSecond:
      need(1);
      r.expr = energy_identity(problem, OpPoly::p(params[0]));
      break;
    case F::PureX: {
      need(1);
      unsigned t = params[0];
      MomentExpr e = commutator_identity(problem, OpPoly({t, 1}, ParamPoly(1L)));
      auto rule = [&](MomentKey k) -> std::optional<MomentExpr> {
        if (k.n == 1) return solve_for(commutator_identity(problem, OpPoly::x(k.m + 1)), k);
        if (k.n >= 2) return solve_for(energy_identity(problem, OpPoly({k.m, k.n - 2}, ParamPoly(1L))), k);
        return std::nullopt;
      };
      r.expr = rewrite(e, rule);
      break;
    }
    case F::PureP: {
      need(1);
      unsigned t = params[0];
      MomentExpr e = commutator_identity(problem, OpPoly::p(t) * OpPoly::x());
      auto rule = [&](MomentKey k) -> std::optional<MomentExpr> {
        if (k.m == 1) return solve_for(commutator_identity(problem, OpPoly::p(k.n + 1)), k);
        if (k.m == 2) return solve_for(energy_identity(problem, OpPoly::p(k.n)), k);
        return std::nullopt;
      };
      r.expr = rewrite(e, rule);
      break;
    }
  }
  return r;
}

std::vector<MomentRelation> instantiate_recursions(const ProblemSpec& problem, unsigned max_degree) {
  problem.validate();
  using F = MomentRelation::Family;
  std::vector<MomentRelation> out;
  for (unsigned t = 0; t + 1 <= max_degree; ++t) out.push_back(recursion(problem, F::MixedFirst, {t}));
  for (unsigned t = 0; t + 1 <= max_degree; ++t) out.push_back(recursion(problem, F::PureX, {t}));
  for (unsigned m = 0; m <= max_degree; ++m)
    for (unsigned n = 2; m + n - 2 <= max_degree; ++n) out.push_back(recursion(problem, F::PowerReduce, {m, n}));
  for (unsigned t = 0; t + 1 <= max_degree; ++t) out.push_back(recursion(problem, F::PFirst, {t}));
  for (unsigned t = 0; t <= max_degree; ++t) out.push_back(recursion(problem, F::PSecond, {t}));
  for (unsigned t = 0; t + 1 <= max_degree; ++t) out.push_back(recursion(problem, F::PureP, {t}));
  return out;
}

// ---------------------------------------------------------------- reduction

namespace {

// Degree gap between the top pure-x term and the test operator power t.
unsigned top_shift(const ProblemSpec& problem) {
  unsigned d = problem.perturbation_degree();
  return std::max(1u, d > 0 ? d - 1 : 0u);
}

// Reduces moments to Laurent series in g over E and X<deg>, with memoization.
class Reducer {
 public:
  explicit Reducer(const ProblemSpec& problem) : problem_(problem) {
    problem_.validate();
    for (MomentKey k : detect_basis(problem_)) basis_.insert(k.m);
  }

  const GSeries& reduce(MomentKey key) {
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    GSeries v = compute(key);
    return cache_.emplace(key, std::move(v)).first->second;
  }

 private:
  using F = MomentRelation::Family;

  GSeries evaluate(const MomentExpr& e) {
    GSeries r;
    for (const auto& [k, c] : e.terms()) r += (reduce(k.second) * c).shifted(k.first);
    return r;
  }

  GSeries compute(MomentKey key) {
    if (key.m == 0 && key.n == 0) return GSeries(ParamPoly(1L));
    if (problem_.parity_even && (key.m + key.n) % 2 != 0) return {};
    if (key.n >= 2) {
      MomentExpr e = recursion(problem_, F::PowerReduce, {key.m, key.n}).expr;
      return evaluate(*solve_for(e, key));
    }
    if (key.n == 1) {
      MomentExpr e = recursion(problem_, F::MixedFirst, {key.m}).expr;
      return evaluate(*solve_for(e, key));
    }
    unsigned deg = key.m;
    if (basis_.contains(deg)) return GSeries(ParamPoly(Sym::moment(static_cast<int>(deg))));
    unsigned shift = top_shift(problem_);
    if (deg < shift) throw Error(ErrorCode::IrreducibleMoment, "<x^" + std::to_string(deg) + "> is below the chain");
    MomentExpr e = recursion(problem_, F::PureX, {deg - shift}).expr;
    // Highest-degree term, which must sit at a single grade with a constant coefficient.
    std::optional<int> grade;
    FieldElem c;
    for (const auto& [k, v] : e.terms()) {
      if (k.second != key) continue;
      if (grade || !v.is_constant())
        throw Error(ErrorCode::IrreducibleMoment,
                    "top coefficient of <x^" + std::to_string(deg) + "> is not a single power of g");
      grade = k.first;
      c = v.constant_term();
    }
    for (const auto& [k, v] : e.terms())
      if (k.second.degree() > deg)
        throw Error(ErrorCode::IrreducibleMoment, "pure-x chain is not triangular at degree " + std::to_string(deg));
    if (!grade) throw Error(ErrorCode::IrreducibleMoment, "<x^" + std::to_string(deg) + "> does not appear");
    MomentExpr rest = e;
    rest.add(*grade, key, -ParamPoly(c));
    return divide_by_monomial(-evaluate(rest), c, *grade);
  }

  ProblemSpec problem_;
  std::set<unsigned> basis_;
  std::map<MomentKey, GSeries> cache_;
};

}  // namespace

std::vector<MomentKey> detect_basis(const ProblemSpec& problem) {
  std::vector<MomentKey> basis;
  for (unsigned deg = 1; deg < top_shift(problem); ++deg) {
    if (problem.parity_even && deg % 2 != 0) continue;
    basis.push_back({deg, 0});
  }
  return basis;
}

GSeries reduce_moment(MomentKey key, const ProblemSpec& problem) { return Reducer(problem).reduce(key); }

// ---------------------------------------------------------------- MomentTable

MomentTable::MomentTable(ProblemSpec problem, int order, std::vector<MomentKey> basis,
                         std::map<MomentKey, Entry> entries)
    : problem_(std::move(problem)), order_(order), basis_(std::move(basis)), entries_(std::move(entries)) {}

int MomentTable::available_order(MomentKey key) const {
  if (problem_.parity_even && (key.m + key.n) % 2 != 0) return order_;
  auto it = entries_.find(key);
  return it == entries_.end() ? -1 : static_cast<int>(it->second.coeffs.size()) - 1;
}

const ParamPoly& MomentTable::coeff(MomentKey key, int j) const {
  static const ParamPoly zero;
  if (j < 0) return zero;
  if (problem_.parity_even && (key.m + key.n) % 2 != 0) return zero;
  auto it = entries_.find(key);
  if (it == entries_.end() || j >= static_cast<int>(it->second.coeffs.size()))
    throw Error(ErrorCode::OrderExceeded, "<x^" + std::to_string(key.m) + " p^" + std::to_string(key.n) +
                                              "> is not tabulated at order " + std::to_string(j));
  return it->second.coeffs[j];
}

GSeries MomentTable::series(MomentKey key) const {
  if (problem_.parity_even && (key.m + key.n) % 2 != 0) return {};
  auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorCode::OrderExceeded, "moment not tabulated");
  return GSeries(0, it->second.coeffs);
}

unsigned MomentTable::max_degree(int j) const {
  unsigned best = 0;
  for (const auto& [k, e] : entries_)
    if (static_cast<int>(e.coeffs.size()) > j) best = std::max(best, k.degree());
  return best;
}

GSeries energy_series(int order) {
  std::vector<ParamPoly> c;
  for (int j = 0; j <= order; ++j) c.emplace_back(Sym::energy(j));
  return GSeries(0, std::move(c));
}

MomentTable fix_basis_series(const ProblemSpec& problem, int order) {
  if (order < 0) throw Error(ErrorCode::ValidationError, "negative order");
  Reducer reducer(problem);
  std::vector<MomentKey> basis = detect_basis(problem);
  std::map<MomentKey, MomentTable::Entry> entries;
  entries[{0, 0}].coeffs.assign(order + 1, ParamPoly());
  entries[{0, 0}].coeffs[0] = ParamPoly(1L);
  if (basis.empty()) return MomentTable(problem, order, basis, std::move(entries));

  // X<D> = Σ_j g^j B<D>_j, with the B's the unknowns.
  auto basis_series = [&](unsigned deg, int through) {
    std::vector<ParamPoly> c;
    for (int j = 0; j <= through; ++j) c.emplace_back(Sym::basis_coeff(static_cast<int>(deg), j));
    return GSeries(0, std::move(c));
  };

  const unsigned shift = top_shift(problem);
  const unsigned cap = 4 * static_cast<unsigned>(order + 2);
  std::vector<ParamPoly> constraints;
  std::set<Sym> unknowns;
  LinSolution sol;

  auto all_fixed = [&]() {
    for (MomentKey b : basis)
      for (int j = 0; j <= order; ++j) {
        Sym s = Sym::basis_coeff(static_cast<int>(b.m), j);
        if (!sol.determined(s)) return false;
        for (Sym t : sol.solution.at(s).symbols())
          if (t.kind() != SymKind::Energy || t.i() > j) return false;
      }
    return true;
  };

  for (unsigned deg = shift; deg <= cap; ++deg) {
    if (problem.parity_even && deg % 2 != 0) continue;
    GSeries red = reducer.reduce({deg, 0});
    if (red.is_zero() || red.lo() >= 0) continue;
    // Every coefficient of g^r, r < 0, must cancel after substitution.
    const int s = -red.lo();
    GSeries es = energy_series(s - 1);
    GSeries total;
    for (int r = red.lo(); r < 0; ++r) {
      const ParamPoly& c = red.at(r);
      if (c.is_zero()) continue;
      const int work = -1 - r;
      GSeries term;
      for (const auto& [mono, v] : c.terms()) {
        GSeries piece{ParamPoly(v)};
        for (const auto& vp : mono.vars()) {
          GSeries factor;
          if (vp.sym == kE) factor = es;
          else if (vp.sym.kind() == SymKind::Moment) factor = basis_series(vp.sym.i(), work);
          else throw Error(ErrorCode::ValidationError, "unexpected symbol in reduced moment");
          for (unsigned e = 0; e < vp.exp; ++e) piece = laurent_mul(piece, factor, work);
        }
        term += piece;
      }
      total += term.truncated(work).shifted(r);
    }
    for (int r = red.lo(); r < 0; ++r) {
      if (total.at(r).is_zero()) continue;
      constraints.push_back(total.at(r));
      for (Sym t : total.at(r).symbols())
        if (t.kind() == SymKind::BasisCoeff) unknowns.insert(t);
    }
    if (constraints.empty()) continue;
    std::vector<Sym> us(unknowns.begin(), unknowns.end());
    try {
      sol = linsolve(linear_system(constraints, us));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InconsistentSystem) throw Error(ErrorCode::SingularityNotCancelable, e.what());
      throw;
    }
    if (all_fixed()) {
      for (MomentKey b : basis) {
        auto& c = entries[b].coeffs;
        for (int j = 0; j <= order; ++j) c.push_back(sol.solution.at(Sym::basis_coeff(static_cast<int>(b.m), j)));
      }
      return MomentTable(problem, order, basis, std::move(entries));
    }
  }
  throw Error(ErrorCode::UnderdeterminedBasis,
              problem.label + ": basis series not fixed through order " + std::to_string(order) + " by degree " +
                  std::to_string(cap));
}

std::vector<unsigned> default_table_degrees(const ProblemSpec& problem, int order) {
  unsigned top = problem.ansatz_degree(order) + problem.perturbation_degree() + 2;
  return std::vector<unsigned>(order + 1, top);
}

namespace {

class TableBuilder {
 public:
  TableBuilder(const ProblemSpec& problem, int order) : problem_(problem), order_(order), es_(energy_series(order)) {
    e_powers_.push_back(GSeries(ParamPoly(1L)));
  }

  // Regular route: order by order, degrees ascending, then powers of p.
  std::map<MomentKey, MomentTable::Entry> run(const std::vector<unsigned>& degrees) {
    using F = MomentRelation::Family;
    entries_[{0, 0}].coeffs.assign(order_ + 1, ParamPoly());
    entries_[{0, 0}].coeffs[0] = ParamPoly(1L);
    for (int j = 0; j <= order_; ++j) {
      const unsigned top = degrees[j];
      for (unsigned deg = 1; deg <= top; ++deg) {
        if (skip({deg, 0})) continue;
        const MomentExpr& rel = relation({deg, 0}, [&] {
          // Pure-x identity from O = x^{deg−1} p, solved for the grade-0 top term.
          return *solve_for(recursion(problem_, F::PureX, {deg - 1}).expr, MomentKey{deg, 0});
        });
        store({deg, 0}, j, eval(rel, j));
      }
      for (unsigned n = 1; n <= top; ++n)
        for (unsigned m = 0; m + n <= top; ++m) {
          MomentKey key{m, n};
          if (skip(key)) continue;
          const MomentExpr& rel = relation(key, [&] {
            if (n == 1) return *solve_for(recursion(problem_, F::MixedFirst, {m}).expr, key);
            return *solve_for(recursion(problem_, F::PowerReduce, {m, n}).expr, key);
          });
          store(key, j, eval(rel, j));
        }
    }
    return std::move(entries_);
  }

 private:
  bool skip(MomentKey k) const { return problem_.parity_even && (k.m + k.n) % 2 != 0; }

  const MomentExpr& relation(MomentKey key, const std::function<MomentExpr()>& make) {
    auto it = rules_.find(key);
    if (it == rules_.end()) it = rules_.emplace(key, make()).first;
    return it->second;
  }

  const GSeries& e_power(unsigned e) {
    while (e_powers_.size() <= e) e_powers_.push_back(laurent_mul(e_powers_.back(), es_, order_));
    return e_powers_[e];
  }

  const ParamPoly& value(MomentKey key, int j) {
    static const ParamPoly zero;
    if (j < 0 || skip(key)) return zero;
    auto it = entries_.find(key);
    if (it == entries_.end() || j >= static_cast<int>(it->second.coeffs.size()))
      throw Error(ErrorCode::OrderExceeded, "table degree plan does not close at <x^" + std::to_string(key.m) +
                                                " p^" + std::to_string(key.n) + "> order " + std::to_string(j));
    return it->second.coeffs[j];
  }

  // Order-j coefficient of Σ g^grade c(E) ⟨key⟩.
  ParamPoly eval(const MomentExpr& rel, int j) {
    ParamPoly out;
    for (const auto& [k, c] : rel.terms()) {
      const int grade = k.first;
      if (grade > j) continue;
      std::vector<ParamPoly> parts = c.coeffs_in(kE);
      for (std::size_t e = 0; e < parts.size(); ++e) {
        if (parts[e].is_zero()) continue;
        const GSeries& ep = e_power(static_cast<unsigned>(e));
        for (int a = 0; grade + a <= j; ++a) {
          const ParamPoly& ea = ep.at(a);
          if (ea.is_zero()) continue;
          const ParamPoly& v = value(k.second, j - grade - a);
          if (v.is_zero()) continue;
          out += parts[e] * ea * v;
        }
      }
    }
    return out;
  }

  void store(MomentKey key, int j, ParamPoly v) {
    auto& c = entries_[key].coeffs;
    if (static_cast<int>(c.size()) != j)
      throw Error(ErrorCode::OrderExceeded, "table degree plan skipped an order for <x^" + std::to_string(key.m) +
                                                " p^" + std::to_string(key.n) + ">");
    c.push_back(std::move(v));
  }

  const ProblemSpec& problem_;
  int order_;
  GSeries es_;
  std::vector<GSeries> e_powers_;
  std::map<MomentKey, MomentExpr> rules_;
  std::map<MomentKey, MomentTable::Entry> entries_;
};

}  // namespace

MomentTable build_moment_table(const ProblemSpec& problem, int order, std::vector<unsigned> degrees,
                               bool cross_check) {
  problem.validate();
  if (order < 0) throw Error(ErrorCode::ValidationError, "negative order");
  if (degrees.empty()) degrees = default_table_degrees(problem, order);
  degrees.resize(order + 1, degrees.back());
  // Order j needs degree +(d−2) at order j−1 and every degree needed at order j.
  const unsigned d = problem.perturbation_degree();
  const unsigned step = d > 2 ? d - 2 : 0;
  for (int j = order; j > 0; --j) degrees[j - 1] = std::max(degrees[j - 1], degrees[j] + step);
  for (int j = 0; j < order; ++j) degrees[j + 1] = std::min(degrees[j + 1], degrees[j]);

  std::vector<MomentKey> basis = detect_basis(problem);
  MomentTable table(problem, order, basis, TableBuilder(problem, order).run(degrees));

  if (cross_check && !basis.empty()) {
    MomentTable fixed = fix_basis_series(problem, order);
    for (MomentKey b : basis)
      for (int j = 0; j <= order; ++j)
        if (fixed.coeff(b, j) != table.coeff(b, j))
          throw Error(ErrorCode::SingularityNotCancelable,
                      "singular and regular routes disagree on <x^" + std::to_string(b.m) + "> at order " +
                          std::to_string(j));
  }
  return table;
}

GSeries evaluate_expectation(const GradedOp& a, const MomentTable& table, int order) {
  std::vector<ParamPoly> out(order + 1);
  for (const auto& [grade, op] : a.terms()) {
    if (grade < 0) throw Error(ErrorCode::ValidationError, "negative grade in expectation");
    for (const auto& [mono, c] : op.terms())
      for (int j = 0; grade + j <= order; ++j) {
        const ParamPoly& v = table.coeff(mono, j);
        if (!v.is_zero()) out[grade + j] += c * v;
      }
  }
  return GSeries(0, std::move(out));
}

GSeries evaluate_expectation(const OpPoly& a, const MomentTable& table) {
  return evaluate_expectation(GradedOp(a), table, table.order());
}

}  // namespace nullboot
