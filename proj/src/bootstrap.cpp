#include "nullboot/bootstrap.hpp"

#include <algorithm>
#include <sstream>

#include "nullboot/error.hpp"

namespace nullboot {

namespace {

const Sym kN = Sym::level();
const Sym kE0 = Sym::energy(0);

ParamPoly half(long num) { return ParamPoly(FieldElem::rational(num, 2)); }

// E0 − 1/2 + shift, the level index seen from the current state.
ParamPoly level_from_e0(int shift) { return ParamPoly(kE0) + half(2 * shift - 1); }

// p(n) evaluated at n = value; `value` may itself contain n.
ParamPoly at_level(const ParamPoly& p, const ParamPoly& value) {
  const Sym tmp = Sym::aux(-1);
  return poly_substitute(poly_substitute(p, {{kN, ParamPoly(tmp)}}), {{tmp, value}});
}

// E<b> → P_b(E0 − 1/2) for 1 <= b < below.
Bindings energy_bindings(const EnergySeries& es, int below) {
  Bindings b;
  for (int j = 1; j < below && j < static_cast<int>(es.orders.size()); ++j)
    b.emplace(Sym::energy(j), at_level(es.orders[j], level_from_e0(0)));
  return b;
}

// Order-b coefficient of ⟨y⟩.
ParamPoly bracket(const OpPoly& y, const MomentTable& table, int b) {
  ParamPoly out;
  for (const auto& [mono, c] : y.terms()) {
    const ParamPoly& v = table.coeff(mono, b);
    if (!v.is_zero()) out += c * v;
  }
  return out;
}

std::vector<Sym> ansatz_symbols(const OpPoly& body) {
  std::set<Sym> s;
  for (const auto& [mono, c] : body.terms())
    for (Sym t : c.symbols())
      if (t.kind() == SymKind::Ansatz) s.insert(t);
  return {s.begin(), s.end()};
}

// Σ_{a+b+c=i} ⟨O W_a L^{(c)}⟩^{(b)}, W_a = H_a − ε_a.
ParamPoly null_expression(const OpPoly& o, const ProblemSpec& problem, const MomentTable& table, int i,
                          const std::vector<OpPoly>& ladder, const std::vector<ParamPoly>& eps) {
  GradedOp h = problem.hamiltonian();
  ParamPoly total;
  for (int a = 0; a <= i; ++a) {
    OpPoly w = (a <= h.max_grade() ? h.at(a) : OpPoly()) - OpPoly(eps[a]);
    OpPoly ow = o * w;
    for (int c = 0; a + c <= i; ++c) total += bracket(ow * ladder[c], table, i - a - c);
  }
  return total;
}

std::vector<ParamPoly> shifted_energies(const EnergySeries& es, int i, int step, int delta) {
  std::vector<ParamPoly> eps;
  eps.push_back(ParamPoly(kE0) + ParamPoly(static_cast<long>(delta)));
  for (int a = 1; a < i; ++a) eps.push_back(at_level(es.orders[a], level_from_e0(step)));
  if (i >= 1) eps.emplace_back(Sym::shifted_energy(i));
  return eps;
}

// Sign of a real element a + b√2.
int real_sign(const FieldElem& x) {
  int sa = sgn(x.a()), sb = sgn(x.b());
  if (sb == 0 || sa == sb) return sa != 0 ? sa : sb;
  if (sa == 0) return sb;
  return x.a() * x.a() > 2 * x.b() * x.b() ? sa : sb;
}

bool same_solution(const LinSolution& x, const LinSolution& y) {
  return x.free == y.free && x.solution == y.solution;
}

}  // namespace

std::string to_string(Branch b) { return b == Branch::Lower ? "lower" : "raise"; }

LadderAnsatz build_ansatz(int order, unsigned K, Branch branch) {
  if (K < 1) throw Error(ErrorCode::ValidationError, "ansatz degree must be at least 1");
  LadderAnsatz a{order, K, branch, {}, {}};
  for (unsigned d = 0; d <= K; ++d)
    for (unsigned m = 0; m <= d; ++m) {
      unsigned n = d - m;
      Sym s = Sym::ansatz(order, static_cast<int>(m), static_cast<int>(n));
      a.unknowns.push_back(s);
      a.body += OpPoly::x_ip(m, n) * ParamPoly(s);
    }
  std::sort(a.unknowns.begin(), a.unknowns.end());
  return a;
}

std::vector<OpMonomial> test_operators(unsigned max_degree) {
  std::vector<OpMonomial> ops;
  for (unsigned d = 0; d <= max_degree; ++d)
    for (unsigned m = 0; m <= d; ++m) ops.push_back({m, d - m});
  return ops;
}

namespace {

std::vector<OpPoly> ladders_with(const BranchHistory& history, const OpPoly& body) {
  std::vector<OpPoly> l = history.ladder;
  l.push_back(body);
  return l;
}

std::vector<Sym> null_unknowns(const LadderAnsatz& ansatz) {
  std::vector<Sym> u = ansatz.unknowns;
  if (ansatz.order >= 1) u.push_back(Sym::shifted_energy(ansatz.order));
  return u;
}

}  // namespace

LinSys assemble_null_system(const LadderAnsatz& ansatz, const MomentTable& table, const EnergySeries& energies,
                            const BranchHistory& history, const std::vector<OpMonomial>& test_ops, int delta) {
  const int i = ansatz.order;
  if (static_cast<int>(history.ladder.size()) != i || static_cast<int>(energies.orders.size()) < i)
    throw Error(ErrorCode::ValidationError, "lower orders must be solved first");
  const int step = step_of(ansatz.branch);
  std::vector<ParamPoly> eps = shifted_energies(energies, i, step, i == 0 ? delta : step);
  std::vector<OpPoly> ladder = ladders_with(history, ansatz.body);
  Bindings bind = energy_bindings(energies, i);
  std::vector<ParamPoly> exprs;
  for (OpMonomial o : test_ops)
    exprs.push_back(poly_substitute(
        null_expression(OpPoly::x_ip(o.m, o.n), table.problem(), table, i, ladder, eps), bind));
  return linear_system(exprs, null_unknowns(ansatz));
}

namespace {

struct Saturated {
  LinSolution solution;
  unsigned test_degree = 0;
};

// Grows the test-operator set until the solution repeats for two consecutive degrees.
Saturated saturate(const LadderAnsatz& ansatz, const MomentTable& table, const EnergySeries& energies,
                   const BranchHistory& history, int delta, const BootstrapConfig& config) {
  const int i = ansatz.order;
  const int step = step_of(ansatz.branch);
  std::vector<ParamPoly> eps = shifted_energies(energies, i, step, i == 0 ? delta : step);
  std::vector<OpPoly> ladder = ladders_with(history, ansatz.body);
  Bindings bind = energy_bindings(energies, i);
  std::vector<Sym> unknowns = null_unknowns(ansatz);

  std::vector<ParamPoly> exprs;
  std::optional<LinSolution> prev;
  const unsigned first = ansatz.K + 1;
  for (unsigned M = 0; M <= first + config.test_extra_cap; ++M) {
    for (unsigned m = 0; m <= M; ++m) {
      OpPoly o = OpPoly::x_ip(m, M - m);
      ParamPoly e = poly_substitute(null_expression(o, table.problem(), table, i, ladder, eps), bind);
      if (!e.is_zero()) exprs.push_back(std::move(e));
    }
    if (M < first) continue;
    LinSolution sol = linsolve(linear_system(exprs, unknowns));
    if (prev && same_solution(*prev, sol)) return {std::move(sol), M};
    prev = std::move(sol);
  }
  throw Error(ErrorCode::ResidualFreedom, "order " + std::to_string(i) + " " + to_string(ansatz.branch) +
                                              ": null solution did not stabilize by test degree " +
                                              std::to_string(first + config.test_extra_cap));
}

}  // namespace

OrderPartial solve_order(const ProblemSpec& problem, const MomentTable& table, int order, Branch branch,
                         const EnergySeries& energies, const BranchHistory& history, const BootstrapConfig& config) {
  unsigned K = order < static_cast<int>(config.ansatz_degrees.size()) ? config.ansatz_degrees[order]
                                                                      : problem.ansatz_degree(order);
  OrderPartial part;
  part.order = order;
  part.branch = branch;
  part.ansatz = build_ansatz(order, K, branch);
  const int step = step_of(branch);

  if (order == 0) {
    std::vector<std::pair<int, Saturated>> found;
    for (int d = 1; d <= static_cast<int>(K); ++d) {
      Saturated s = saturate(part.ansatz, table, energies, history, step * d, config);
      if (!s.solution.free.empty()) found.emplace_back(step * d, std::move(s));
    }
    if (found.size() != 1)
      throw Error(ErrorCode::BranchAmbiguity, problem.label + ": " + std::to_string(found.size()) +
                                                  " energy steps admit a " + to_string(branch) + " operator");
    part.delta = found[0].first;
    part.solution = std::move(found[0].second.solution);
    part.test_degree = found[0].second.test_degree;
    part.shifted_energy = ParamPoly(kE0) + ParamPoly(static_cast<long>(part.delta));
  } else {
    Saturated s = saturate(part.ansatz, table, energies, history, step, config);
    part.delta = step;
    part.solution = std::move(s.solution);
    part.test_degree = s.test_degree;
    Sym es = Sym::shifted_energy(order);
    if (!part.solution.determined(es))
      throw Error(ErrorCode::ResidualFreedom,
                  problem.label + ": the null system leaves the energy step at order " + std::to_string(order) + " open");
    part.shifted_energy = part.solution.solution.at(es);
  }
  part.body = part.ansatz.body.substituted(part.solution.bindings());
  return part;
}

FieldElem ground_condition(const MomentTable& table, const OrderPartial& lower, const EnergySeries& energies,
                           const BranchHistory& history) {
  const int i = lower.order;
  std::vector<OpPoly> ladder = ladders_with(history, lower.body);
  auto expression = [&](OpMonomial o) {
    OpPoly op = OpPoly::x_ip(o.m, o.n);
    ParamPoly total;
    for (int c = 0; c <= i; ++c) total += bracket(op * ladder[c], table, i - c);
    return total;
  };
  std::vector<OpMonomial> ops = test_operators(lower.test_degree);

  if (i == 0) {
    std::vector<Sym> free = ansatz_symbols(lower.body);
    if (free.size() != 1)
      throw Error(ErrorCode::ResidualFreedom, "order-0 lowering operator has " + std::to_string(free.size()) +
                                                  " free coefficients");
    Bindings unit{{free[0], ParamPoly(1L)}};
    ParamPoly g;
    for (OpMonomial o : ops) g = univariate_gcd(g, poly_substitute(expression(o), unit), kE0);
    if (g.degree_in(kE0) != 1)
      throw Error(ErrorCode::InconsistentGroundSystem, "order-0 ground condition gcd is " + g.str());
    return -g.coeff(kE0, 0).constant_term();
  }

  Bindings bind{{kE0, half(1)}, {Sym::energy(i), ParamPoly(Sym::ground_energy(i))}};
  for (int b = 1; b < i; ++b) bind.emplace(Sym::energy(b), at_level(energies.orders[b], ParamPoly(0L)));
  std::vector<ParamPoly> exprs;
  for (OpMonomial o : ops) exprs.push_back(poly_substitute(expression(o), bind));
  std::vector<Sym> unknowns = ansatz_symbols(lower.body);
  Sym eg = Sym::ground_energy(i);
  unknowns.push_back(eg);
  LinSolution sol;
  try {
    sol = linsolve(linear_system(exprs, unknowns));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InconsistentSystem) throw Error(ErrorCode::InconsistentGroundSystem, e.what());
    throw;
  }
  if (!sol.determined(eg) || !sol.solution.at(eg).is_constant())
    throw Error(ErrorCode::InconsistentGroundSystem,
                "ground energy at order " + std::to_string(i) + " is not fixed by the null state condition");
  return sol.solution.at(eg).constant_term();
}

ParamPoly solve_energy_recursion(const ParamPoly& recursion, int order, int step, const FieldElem& ground,
                                 unsigned degree_bound) {
  const Sym ei = Sym::energy(order);
  for (unsigned deg = degree_bound; deg <= degree_bound + 3; ++deg) {
    std::vector<Sym> cs;
    ParamPoly p;
    for (unsigned k = 0; k <= deg; ++k) {
      cs.push_back(Sym::aux(static_cast<int>(k)));
      p += ParamPoly(cs.back()) * ParamPoly(kN).pow(k);
    }
    ParamPoly lhs = at_level(p, ParamPoly(kN) + ParamPoly(static_cast<long>(step)));
    ParamPoly rhs = poly_substitute(recursion, {{kE0, ParamPoly(kN) + half(1)}, {ei, p}});
    std::vector<ParamPoly> exprs = (lhs - rhs).coeffs_in(kN);
    exprs.push_back(at_level(p, ParamPoly(0L)) - ParamPoly(ground));
    LinSolution sol;
    try {
      sol = linsolve(linear_system(exprs, cs));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InconsistentSystem) continue;
      throw;
    }
    if (!sol.free.empty()) continue;
    return poly_substitute(p, sol.bindings());
  }
  throw Error(ErrorCode::NoPolynomialSolution,
              "no polynomial energy of degree <= " + std::to_string(degree_bound + 3) + " at order " +
                  std::to_string(order));
}

OrderPartial impose_energy_independence(const OrderPartial& partial, const EnergySeries& energies) {
  OrderPartial out = partial;
  Bindings bind = energy_bindings(energies, partial.order + 1);
  OpPoly body = partial.body.substituted(bind);
  std::vector<ParamPoly> exprs;
  for (const auto& [mono, c] : body.terms()) {
    std::vector<ParamPoly> parts = c.coeffs_in(kE0);
    for (std::size_t k = 1; k < parts.size(); ++k)
      if (!parts[k].is_zero()) exprs.push_back(parts[k]);
  }
  if (!exprs.empty()) {
    std::vector<Sym> unknowns = ansatz_symbols(body);
    LinSolution sol = linsolve(linear_system(exprs, unknowns));
    body = body.substituted(sol.bindings());
  }
  for (const auto& [mono, c] : body.terms())
    for (Sym s : c.symbols())
      if (s.kind() != SymKind::Ansatz)
        throw Error(ErrorCode::InconsistentSystem, "ladder coefficient still depends on " + s.name());
  out.body = std::move(body);
  return out;
}

OpPoly impose_normalization(const OrderPartial& partial, const MomentTable& table, const EnergySeries& energies,
                            const BranchHistory& history) {
  const int i = partial.order;
  const int step = step_of(partial.branch);
  std::vector<Sym> free = ansatz_symbols(partial.body);

  if (i == 0) {
    if (free.size() != 1)
      throw Error(ErrorCode::ResidualFreedom,
                  "order-0 " + to_string(partial.branch) + " operator has " + std::to_string(free.size()) +
                      " free coefficients");
    // The free coefficient is a positive multiple of its phase unit.
    FieldElem unit = free[0].is_imaginary() ? FieldElem::imag() : FieldElem(1L);
    OpPoly hat = partial.body.substituted({{free[0], ParamPoly(unit)}});
    ParamPoly norm = bracket(adjoint(hat) * hat, table, 0);
    ParamPoly target = ParamPoly(kE0) + half(step);
    auto ratio = target.divide_exact(norm);
    if (!ratio || !ratio->is_constant() || !ratio->constant_term().is_rational() ||
        sgn(ratio->constant_term().a()) <= 0)
      throw Error(ErrorCode::ResidualFreedom, "order-0 norm is not a positive multiple of the target");
    auto scale = sqrt_rational(ratio->constant_term().a());
    if (!scale || !scale->is_real()) throw Error(ErrorCode::ResidualFreedom, "order-0 scale is not real");
    OpPoly l = hat * ParamPoly(*scale);
    FieldElem xc = l.coeff({1, 0}).is_constant() ? l.coeff({1, 0}).constant_term() : FieldElem();
    if (xc.is_zero() || !xc.is_real())
      throw Error(ErrorCode::ResidualFreedom, "order-0 operator has no real x coefficient to fix the phase");
    return real_sign(xc) < 0 ? -l : l;
  }

  std::vector<OpPoly> ladder = ladders_with(history, partial.body);
  ParamPoly norm;
  for (int a = 0; a <= i; ++a) {
    OpPoly la = adjoint(ladder[a]);
    for (int b = 0; a + b <= i; ++b) norm += bracket(la * ladder[b], table, i - a - b);
  }
  norm = poly_substitute(norm, energy_bindings(energies, i + 1));
  OpPoly body = partial.body;
  if (!free.empty()) {
    std::vector<ParamPoly> exprs;
    for (const auto& part : norm.coeffs_in(kE0))
      if (!part.is_zero()) exprs.push_back(part);
    LinSolution sol = linsolve(linear_system(exprs, free));
    if (!sol.free.empty()) {
      std::ostringstream os;
      for (Sym s : sol.free) os << " " << s.name();
      throw Error(ErrorCode::ResidualFreedom,
                  "order " + std::to_string(i) + " " + to_string(partial.branch) + " leaves" + os.str() + " free");
    }
    body = body.substituted(sol.bindings());
  } else if (!norm.is_zero()) {
    throw Error(ErrorCode::InconsistentSystem, "normalization fails at order " + std::to_string(i));
  }
  return body;
}

bool ResidualReport::all_required_ok() const {
  return std::all_of(items.begin(), items.end(), [](const ResidualItem& r) { return r.ok || !r.required; });
}

const ResidualItem* ResidualReport::find(const std::string& check, int order, Branch branch) const {
  for (const auto& r : items)
    if (r.check == check && r.order == order && r.branch == branch) return &r;
  return nullptr;
}

GradedOp graded_ladder(const std::vector<OpPoly>& per_order) {
  GradedOp g;
  for (std::size_t i = 0; i < per_order.size(); ++i) g.add(static_cast<int>(i), per_order[i]);
  return g;
}

std::vector<unsigned> bootstrap_table_degrees(const ProblemSpec& problem, int max_order,
                                              const std::vector<unsigned>& ansatz_degrees, unsigned max_test_degree) {
  auto K = [&](int c) {
    return c < static_cast<int>(ansatz_degrees.size()) ? ansatz_degrees[c] : problem.ansatz_degree(c);
  };
  const unsigned d = problem.perturbation_degree();
  std::vector<unsigned> need(max_order + 1, 0);
  for (int i = 0; i <= max_order; ++i)
    for (int a = 0; a <= i; ++a)
      for (int c = 0; a + c <= i; ++c) {
        int b = i - a - c;
        unsigned w = a == 0 ? 2 : (a == 1 ? d : 0);
        need[b] = std::max({need[b], max_test_degree + w + K(c), K(a) + K(c)});
      }
  return need;
}

ResidualReport verify_solution(const BootstrapSolution& s, const MomentTable& table, unsigned test_degree) {
  ResidualReport rep;
  const int k = s.max_order;
  std::vector<OpMonomial> ops = test_operators(test_degree);

  for (Branch br : {Branch::Lower, Branch::Raise}) {
    const auto& ladder = br == Branch::Lower ? s.lower : s.raiser;
    const int step = step_of(br);
    for (int i = 0; i <= k; ++i) {
      std::vector<OpPoly> ls(ladder.begin(), ladder.begin() + i + 1);
      std::vector<ParamPoly> eps;
      eps.push_back(ParamPoly(kE0) + ParamPoly(static_cast<long>(step)));
      for (int a = 1; a <= i; ++a) eps.push_back(at_level(s.energies.orders[a], level_from_e0(step)));
      Bindings bind = energy_bindings(s.energies, i + 1);
      int bad = 0;
      for (OpMonomial o : ops)
        if (!poly_substitute(null_expression(OpPoly::x_ip(o.m, o.n), s.problem, table, i, ls, eps), bind).is_zero())
          ++bad;
      rep.items.push_back({"null", i, br, bad == 0, true,
                           std::to_string(ops.size()) + " test operators up to degree " + std::to_string(test_degree) +
                               ", " + std::to_string(bad) + " nonzero"});

      ParamPoly norm;
      for (int a = 0; a <= i; ++a) {
        OpPoly la = adjoint(ls[a]);
        for (int b = 0; a + b <= i; ++b) norm += bracket(la * ls[b], table, i - a - b);
      }
      norm = poly_substitute(norm, bind);
      ParamPoly target = i == 0 ? ParamPoly(kE0) + half(step) : ParamPoly();
      rep.items.push_back({"normalization", i, br, norm == target, true, (norm - target).str()});

      bool clean = true;
      for (const auto& [mono, c] : ladder[i].terms()) clean = clean && c.is_constant();
      rep.items.push_back({"energy_independent", i, br, clean, true, ""});
    }
  }
  for (int i = 0; i <= k; ++i) {
    bool same = s.raiser[i] == adjoint(s.lower[i]);
    if (s.problem.hermitian)
      rep.items.push_back({"raiser_is_adjoint", i, Branch::Raise, same, true, ""});
    else
      rep.items.push_back({"raiser_is_adjoint", i, Branch::Raise, same, false,
                           same ? "" : "differs, as expected without Hermiticity"});
  }

  GradedOp lo = graded_ladder(s.lower), ra = graded_ladder(s.raiser);
  GradedOp comm = graded_commutator(lo, ra, k) - GradedOp(OpPoly(ParamPoly(1L)));
  rep.items.push_back({"commutator", k, Branch::Lower, comm.is_zero(), false, comm.is_zero() ? "" : comm.str()});

  // H = L₊L₋ + E_ground only makes sense for an evenly spaced spectrum.
  bool linear = std::all_of(s.energies.orders.begin(), s.energies.orders.end(),
                            [](const ParamPoly& p) { return p.degree_in(kN) <= 1; });
  if (linear) {
    GradedOp f = s.problem.hamiltonian().truncated(k) - graded_product(ra, lo, k);
    for (int i = 0; i <= k; ++i) {
      ParamPoly e0 = at_level(s.energies.orders[i], ParamPoly(0L));
      if (!e0.is_zero()) f -= GradedOp(OpPoly(e0), i);
    }
    rep.items.push_back({"factorization", k, Branch::Lower, f.is_zero(), false, f.is_zero() ? "" : f.str()});
  }
  return rep;
}

BootstrapSolution bootstrap(const ProblemSpec& problem, const BootstrapConfig& config) {
  problem.validate();
  const int k = config.max_order;
  if (k < 0) throw Error(ErrorCode::ValidationError, "max_order must be non-negative");
  std::vector<unsigned> Ks;
  for (int i = 0; i <= k; ++i)
    Ks.push_back(i < static_cast<int>(config.ansatz_degrees.size()) ? config.ansatz_degrees[i]
                                                                    : problem.ansatz_degree(i));
  unsigned kmax = *std::max_element(Ks.begin(), Ks.end());
  unsigned mmax = kmax + 1 + config.test_extra_cap + config.verify_extra;
  MomentTable table = build_moment_table(problem, k, bootstrap_table_degrees(problem, k, Ks, mmax),
                                         config.cross_check_basis);
  BootstrapConfig cfg = config;
  cfg.ansatz_degrees = Ks;

  BootstrapSolution sol;
  sol.problem = problem;
  sol.max_order = k;
  sol.ansatz_degrees = Ks;
  BranchHistory low{Branch::Lower, {}}, up{Branch::Raise, {}};
  const unsigned d = problem.perturbation_degree();

  for (int i = 0; i <= k; ++i) {
    OrderPartial pl = solve_order(problem, table, i, Branch::Lower, sol.energies, low, cfg);
    OrderPartial pr = solve_order(problem, table, i, Branch::Raise, sol.energies, up, cfg);
    FieldElem ground = ground_condition(table, pl, sol.energies, low);
    ParamPoly e;
    if (i == 0) {
      if (pl.delta != -pr.delta)
        throw Error(ErrorCode::BranchAmbiguity, "raising and lowering steps are not opposite");
      e = ParamPoly(ground) - ParamPoly(kN) * ParamPoly(static_cast<long>(pl.delta));
      if (e != ParamPoly(kN) + half(1))
        throw Error(ErrorCode::ValidationError, "unperturbed spectrum is not n + 1/2: " + e.str());
      sol.order0_steps = {pl.delta, pr.delta};
    } else {
      e = solve_energy_recursion(pl.shifted_energy, i, -1, ground, static_cast<unsigned>(i) * (d - 1) + 1);
      ParamPoly up_check = poly_substitute(pr.shifted_energy, {{kE0, ParamPoly(kN) + half(1)}, {Sym::energy(i), e}});
      if (up_check != at_level(e, ParamPoly(kN) + ParamPoly(1L)))
        throw Error(ErrorCode::InconsistentSystem,
                    "raising branch disagrees with the energy at order " + std::to_string(i));
    }
    sol.energies.orders.push_back(e);
    OpPoly l = impose_normalization(impose_energy_independence(pl, sol.energies), table, sol.energies, low);
    OpPoly r = impose_normalization(impose_energy_independence(pr, sol.energies), table, sol.energies, up);
    low.ladder.push_back(l);
    up.ladder.push_back(r);
    sol.lower.push_back(l);
    sol.raiser.push_back(r);
    sol.test_degrees.push_back(std::max(pl.test_degree, pr.test_degree));
  }
  unsigned mver = *std::max_element(sol.test_degrees.begin(), sol.test_degrees.end()) + config.verify_extra;
  sol.diagnostics = verify_solution(sol, table, mver);
  return sol;
}

}  // namespace nullboot
