#include <algorithm>

#include "doctest.h"
#include "nullboot/bootstrap.hpp"
#include "nullboot/error.hpp"
#include "reference_values.hpp"

using namespace nullboot;

namespace {

ParamPoly c(long num, long den = 1) { return ParamPoly(FieldElem::rational(num, den)); }
const ParamPoly E0 = Sym::energy(0);
const ParamPoly N = Sym::level();

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  FAIL("expected an error");
  return ErrorCode::ValidationError;
}

// Coefficient A(m, n) of x^m (ip)^n in a ladder body.
ParamPoly A(const OpPoly& body, unsigned m, unsigned n) {
  FieldElem in = FieldElem(1L);
  for (unsigned k = 0; k < n; ++k) in *= FieldElem::imag();
  return body.coeff({m, n}) * in.inverse();
}

// Everything needed to solve order `order` once the lower orders are known.
struct Stage {
  ProblemSpec problem;
  BootstrapConfig config;
  MomentTable table;
  EnergySeries energies;
  BranchHistory low{Branch::Lower, {}};
  BranchHistory up{Branch::Raise, {}};
};

Stage stage(const ProblemSpec& problem, int order) {
  BootstrapConfig cfg;
  for (int i = 0; i <= order; ++i) cfg.ansatz_degrees.push_back(problem.ansatz_degree(i));
  unsigned kmax = *std::max_element(cfg.ansatz_degrees.begin(), cfg.ansatz_degrees.end());
  unsigned mmax = kmax + 1 + cfg.test_extra_cap + cfg.verify_extra;
  MomentTable table =
      build_moment_table(problem, order, bootstrap_table_degrees(problem, order, cfg.ansatz_degrees, mmax));
  Stage s{problem, cfg, std::move(table), {}, {}, {}};
  if (order > 0) {
    BootstrapConfig below = cfg;
    below.max_order = order - 1;
    BootstrapSolution sol = bootstrap(problem, below);
    s.energies = sol.energies;
    s.low.ladder = sol.lower;
    s.up.ladder = sol.raiser;
  }
  return s;
}

OrderPartial solve(const Stage& s, int order, Branch b) {
  return solve_order(s.problem, s.table, order, b, s.energies, b == Branch::Lower ? s.low : s.up, s.config);
}

}  // namespace

TEST_CASE("ansatz sizes follow the degree") {
  CHECK(build_ansatz(0, 1, Branch::Lower).unknowns.size() == 3);
  CHECK(build_ansatz(1, 5, Branch::Lower).unknowns.size() == 21);
  CHECK(build_ansatz(2, 9, Branch::Raise).unknowns.size() == 55);
  LadderAnsatz a = build_ansatz(1, 2, Branch::Lower);
  CHECK(a.body.coeff({0, 2}) == -ParamPoly(Sym::ansatz(1, 0, 2)));
  CHECK(a.body.coeff({1, 1}) == ParamPoly(Sym::ansatz(1, 1, 1)) * ParamPoly(FieldElem::imag()));
  CHECK(code_of([] { build_ansatz(0, 0, Branch::Lower); }) == ErrorCode::ValidationError);
  CHECK(test_operators(2).size() == 6);
}

TEST_CASE("order-0 null conditions from the two lowest test operators") {
  Stage s = stage(ProblemSpec::sextic(), 0);
  LadderAnsatz a = build_ansatz(0, 1, Branch::Lower);
  LinSys sys = assemble_null_system(a, s.table, s.energies, s.low, {{0, 0}, {1, 0}}, -1);
  LinSolution sol = linsolve(sys);
  OpPoly body = a.body.substituted(sol.bindings());
  CHECK(A(body, 0, 0).is_zero());
  CHECK(A(body, 1, 0) == A(body, 0, 1));
  CHECK_FALSE(A(body, 1, 0).is_zero());
}

TEST_CASE("assembling out of order is rejected") {
  Stage s = stage(ProblemSpec::sextic(), 0);
  LadderAnsatz a = build_ansatz(1, 5, Branch::Lower);
  CHECK(code_of([&] { assemble_null_system(a, s.table, s.energies, s.low, test_operators(3), -1); }) ==
        ErrorCode::ValidationError);
}

TEST_CASE("order 0 picks the unit energy step") {
  Stage s = stage(ProblemSpec::sextic(), 0);
  OrderPartial lo = solve(s, 0, Branch::Lower);
  OrderPartial up = solve(s, 0, Branch::Raise);
  CHECK(lo.delta == -1);
  CHECK(up.delta == 1);
  CHECK(lo.shifted_energy == E0 - c(1));
  CHECK(ground_condition(s.table, lo, s.energies, s.low) == FieldElem::rational(1, 2));
  OpPoly l0 = impose_normalization(lo, s.table, s.energies, s.low);
  OpPoly r0 = impose_normalization(up, s.table, s.energies, s.up);
  CHECK(l0 == from_ladder(LadderPoly::a()));
  CHECK(r0 == from_ladder(LadderPoly::adag()));
}

TEST_CASE("a quadratic order-0 ansatz admits two lowering steps") {
  BootstrapConfig cfg;
  cfg.max_order = 0;
  cfg.ansatz_degrees = {2};
  CHECK(code_of([&] { bootstrap(ProblemSpec::sextic(), cfg); }) == ErrorCode::BranchAmbiguity);
}

TEST_CASE("sextic first order step by step") {
  Stage s = stage(ProblemSpec::sextic(), 1);
  OrderPartial lo = solve(s, 1, Branch::Lower);
  ParamPoly e1 = Sym::energy(1);
  CHECK(lo.shifted_energy == (c(-45) + c(60) * E0 - c(60) * E0 * E0 + c(8) * e1) * c(1, 8));

  FieldElem ground = ground_condition(s.table, lo, s.energies, s.low);
  CHECK(ground == FieldElem::rational(15, 8));
  ParamPoly en1 = solve_energy_recursion(lo.shifted_energy, 1, -1, ground, 6);
  CHECK(en1 == ref::sextic_e1());

  s.energies.orders.push_back(en1);
  OrderPartial ind = impose_energy_independence(lo, s.energies);
  for (auto [m, n] : {std::pair{0u, 2u}, {1u, 3u}, {4u, 0u}, {0u, 4u}}) CHECK(A(ind.body, m, n).is_zero());
  const ParamPoly a05 = A(ind.body, 0, 5), a03 = A(ind.body, 0, 3);
  const ParamPoly r2 = ParamPoly(FieldElem::sqrt2());
  CHECK(A(ind.body, 2, 3) == (c(15) * r2 - c(32) * a05) * c(1, 16));
  CHECK(A(ind.body, 3, 2) == (c(-25) * r2 - c(32) * a05) * c(1, 16));
  CHECK(A(ind.body, 1, 4) == (c(15) * r2 + c(16) * a05) * c(1, 16));
  CHECK(A(ind.body, 1, 2) == c(15, 16) * r2 + a03 - c(8) * a05);

  OpPoly l1 = impose_normalization(ind, s.table, s.energies, s.low);
  const ParamPoly inv = c(1, 2) * r2;
  CHECK(A(l1, 0, 5) == c(-5, 16) * inv);
  CHECK(A(l1, 0, 3) == c(25, 8) * inv);
  CHECK(A(l1, 0, 1) == c(15, 4) * inv);
  CHECK(l1 == ref::xp_poly(ref::sextic_lower1, false));
}

TEST_CASE("energy recursion needs enough degree") {
  // P(n−1) = P(n) − (n + 1/2)^5 has a degree-6 solution.
  ParamPoly rec = ParamPoly(Sym::energy(1)) - E0.pow(5);
  ParamPoly p = solve_energy_recursion(rec, 1, -1, FieldElem(0L), 6);
  CHECK(p.degree_in(Sym::level()) == 6);
  ParamPoly shifted = poly_substitute(poly_substitute(p, {{Sym::level(), Sym::aux(0)}}), {{Sym::aux(0), N - c(1)}});
  CHECK(shifted == p - (N + c(1, 2)).pow(5));
  CHECK(code_of([&] { solve_energy_recursion(rec, 1, -1, FieldElem(0L), 1); }) == ErrorCode::NoPolynomialSolution);
}

TEST_CASE("cubic recursions") {
  Stage s1 = stage(ProblemSpec::cubic(), 1);
  CHECK(solve(s1, 1, Branch::Lower).shifted_energy == ParamPoly(Sym::energy(1)));

  Stage s2 = stage(ProblemSpec::cubic(), 2);
  OrderPartial lo = solve(s2, 2, Branch::Lower);
  CHECK(lo.shifted_energy == (c(15) - c(30) * E0 + c(4) * ParamPoly(Sym::energy(2))) * c(1, 4));
  FieldElem ground = ground_condition(s2.table, lo, s2.energies, s2.low);
  CHECK(ground == FieldElem::rational(11, 8));
  CHECK(solve_energy_recursion(lo.shifted_energy, 2, -1, ground, 5) == ref::cubic_e2());
}

TEST_CASE("sextic through first order") {
  BootstrapConfig cfg;
  cfg.max_order = 1;
  BootstrapSolution s = bootstrap(ProblemSpec::sextic(), cfg);
  CHECK(s.energies.orders[0] == N + c(1, 2));
  CHECK(s.energies.orders[1] == ref::sextic_e1());
  CHECK(s.lower[0] == from_ladder(LadderPoly::a()));
  CHECK(s.lower[1] == ref::xp_poly(ref::sextic_lower1, false));
  CHECK(s.raiser[1] == ref::xp_poly(ref::sextic_raiser1, false));
  CHECK(s.ansatz_degrees == std::vector<unsigned>{1, 5});
  CHECK(s.order0_steps == std::vector<int>{-1, 1});
  CHECK(s.diagnostics.all_required_ok());
  const ResidualItem* adj = s.diagnostics.find("raiser_is_adjoint", 1, Branch::Raise);
  REQUIRE(adj != nullptr);
  CHECK(adj->ok);
  const ResidualItem* comm = s.diagnostics.find("commutator", 1, Branch::Lower);
  REQUIRE(comm != nullptr);
  CHECK_FALSE(comm->required);
}

TEST_CASE("verification catches a corrupted ladder") {
  BootstrapConfig cfg;
  cfg.max_order = 1;
  BootstrapSolution s = bootstrap(ProblemSpec::sextic(), cfg);
  unsigned M = s.test_degrees.back() + cfg.verify_extra;
  MomentTable table = build_moment_table(s.problem, 1, bootstrap_table_degrees(s.problem, 1, s.ansatz_degrees, 12));
  CHECK(verify_solution(s, table, M).all_required_ok());

  s.lower[1] += OpPoly::x(3) * c(1, 100);
  ResidualReport bad = verify_solution(s, table, M);
  CHECK_FALSE(bad.all_required_ok());
  CHECK_FALSE(bad.find("null", 1, Branch::Lower)->ok);
  CHECK(bad.find("null", 1, Branch::Raise)->ok);
  CHECK_FALSE(bad.find("raiser_is_adjoint", 1, Branch::Raise)->ok);
}

TEST_CASE("cubic through second order") {
  BootstrapConfig cfg;
  BootstrapSolution s = bootstrap(ProblemSpec::cubic(), cfg);
  CHECK(s.energies.orders[1].is_zero());
  CHECK(s.energies.orders[2] == ref::cubic_e2());
  CHECK(s.lower[1] == ref::xp_poly(ref::cubic_lower1, false));
  CHECK(s.raiser[1] == ref::xp_poly(ref::cubic_raiser1, false));
  CHECK(s.lower[2] == ref::xp_poly(ref::cubic_ladder2, false));
  CHECK(s.raiser[2] == ref::xp_poly(ref::cubic_ladder2, true));
  CHECK(s.raiser[1] != adjoint(s.lower[1]));
  CHECK(s.diagnostics.all_required_ok());
  const ResidualItem* adj = s.diagnostics.find("raiser_is_adjoint", 1, Branch::Raise);
  REQUIRE(adj != nullptr);
  CHECK_FALSE(adj->ok);
  CHECK_FALSE(adj->required);
  CHECK(s.diagnostics.find("factorization", 2, Branch::Lower) == nullptr);
}

TEST_CASE("shifted oscillator through second order") {
  BootstrapConfig cfg;
  BootstrapSolution s = bootstrap(ProblemSpec::shifted(), cfg);
  CHECK(s.energies.orders[0] == N + c(1, 2));
  CHECK(s.energies.orders[1].is_zero());
  CHECK(s.energies.orders[2] == c(1, 2));
  const ParamPoly i_over_root2 = ParamPoly(FieldElem(0, 0, 0, Rat(1, 2)));
  CHECK(s.lower[1] == OpPoly(i_over_root2));
  CHECK(s.raiser[1] == OpPoly(i_over_root2));
  CHECK(s.lower[2].is_zero());
  CHECK(s.raiser[2].is_zero());
  CHECK(s.diagnostics.all_required_ok());
  CHECK(s.diagnostics.find("factorization", 2, Branch::Lower)->ok);
  CHECK(s.diagnostics.find("commutator", 2, Branch::Lower)->ok);
}

TEST_CASE("table degrees close under the recursion") {
  for (const ProblemSpec& p : {ProblemSpec::sextic(), ProblemSpec::cubic(), ProblemSpec::shifted()}) {
    std::vector<unsigned> Ks;
    for (int i = 0; i <= 2; ++i) Ks.push_back(p.ansatz_degree(i));
    std::vector<unsigned> deg = bootstrap_table_degrees(p, 2, Ks, 12);
    REQUIRE(deg.size() == 3);
    for (unsigned d : deg) CHECK(d >= 12 + 2);
  }
}

TEST_CASE("graded ladder collects orders") {
  GradedOp l = graded_ladder({OpPoly::x(), OpPoly(), OpPoly::p()});
  CHECK(l.at(0) == OpPoly::x());
  CHECK(l.at(1).is_zero());
  CHECK(l.at(2) == OpPoly::p());
}
