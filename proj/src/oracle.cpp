#include "nullboot/oracle.hpp"

#include <algorithm>

#include "nullboot/error.hpp"

namespace nullboot {

namespace {

void require_order(int order) {
  if (order != 1 && order != 2)
    throw Error(ErrorCode::UnsupportedOrder, "perturbation theory is implemented for orders 1 and 2 only");
}

void require_hermitian(const ProblemSpec& problem) {
  if (!problem.hermitian)
    throw Error(ErrorCode::ValidationError, problem.label + ": Rayleigh-Schroedinger needs a Hermitian problem");
}

LadderPoly charge_zero(const LadderPoly& l) {
  auto parts = charge_decompose(l);
  auto it = parts.find(0);
  return it == parts.end() ? LadderPoly() : it->second;
}

// Σ_{k≠0} X_k / (−k): inverts E_n − E_{n+k} = −k on each charge sector.
LadderPoly resolvent(const LadderPoly& x) {
  LadderPoly out;
  for (const auto& [k, part] : charge_decompose(x))
    if (k != 0) out += part * ParamPoly(FieldElem::rational(-1, k));
  return out;
}

struct Corrections {
  LadderPoly hp, d1, f1, f2;
};

Corrections corrections(const ProblemSpec& problem) {
  require_hermitian(problem);
  Corrections c;
  c.hp = to_ladder(problem.perturbation);
  c.d1 = charge_zero(c.hp);
  c.f1 = resolvent(c.hp);
  c.f2 = resolvent(c.hp * c.f1 - c.f1 * c.d1) -
         charge_zero(ladder_adjoint(c.f1) * c.f1) * ParamPoly(FieldElem::rational(1, 2));
  return c;
}

}  // namespace

ParamPoly rs_energy(const ProblemSpec& problem, int order) {
  require_order(order);
  require_hermitian(problem);
  LadderPoly hp = to_ladder(problem.perturbation);
  if (order == 1) return diagonal_eigenvalue(charge_zero(hp));
  return diagonal_eigenvalue(charge_zero(hp * resolvent(hp)));
}

StateCorrection rs_state_correction(const ProblemSpec& problem, int order) {
  require_order(order);
  Corrections c = corrections(problem);
  return {order, order == 1 ? c.f1 : c.f2};
}

std::pair<OpPoly, OpPoly> rs_ladder(const ProblemSpec& problem, int order) {
  require_order(order);
  Corrections c = corrections(problem);
  const LadderPoly a = LadderPoly::a(), ad = LadderPoly::adag();
  LadderPoly lo1 = ladder_commutator(c.f1, a), up1 = ladder_commutator(c.f1, ad);
  if (order == 1) return {from_ladder(lo1), from_ladder(up1)};
  LadderPoly lo2 = ladder_commutator(c.f2, a) - lo1 * c.f1;
  LadderPoly up2 = ladder_commutator(c.f2, ad) - up1 * c.f1;
  return {from_ladder(lo2), from_ladder(up2)};
}

GradedOp equiv_hermitian(const ProblemSpec& problem, int order) {
  if (!problem.similarity_generator)
    throw Error(ErrorCode::ValidationError, problem.label + ": no similarity generator is known");
  if (order > problem.generator_order)
    throw Error(ErrorCode::UnsupportedOrder, problem.label + ": similarity generator is only known through order " +
                                                 std::to_string(problem.generator_order));
  GradedOp ht = graded_conjugate(problem.hamiltonian(), *problem.similarity_generator, order);
  if (!(graded_adjoint(ht) == ht))
    throw Error(ErrorCode::NonHermitianResult, problem.label + ": conjugated Hamiltonian is not self-adjoint");
  return ht;
}

bool verify_v_conjugation(const ProblemSpec& problem, int order) {
  if (!problem.metric_generator || order > problem.generator_order) return false;
  GradedOp h = problem.hamiltonian();
  return graded_conjugate(h, *problem.metric_generator, order) == graded_adjoint(h).truncated(order);
}

ParamPoly equiv_hermitian_energy(const ProblemSpec& problem) {
  GradedOp ht = equiv_hermitian(problem, 2);
  if (!ht.at(1).is_zero())
    throw Error(ErrorCode::UnsupportedOrder, problem.label + ": equivalent Hamiltonian has a g^1 term");
  return diagonal_eigenvalue(charge_zero(to_ladder(ht.at(2))));
}

bool ComparisonReport::all_match() const {
  return std::all_of(items.begin(), items.end(), [](const ComparisonItem& it) { return it.match; });
}

namespace {

void add_item(ComparisonReport& rep, std::string quantity, int order, ComparisonItem::Value oracle,
              ComparisonItem::Value bootstrap) {
  bool match = oracle == bootstrap;
  rep.items.push_back({std::move(quantity), order, std::move(oracle), std::move(bootstrap), match});
}

}  // namespace

ComparisonReport compare_with_oracle(const BootstrapSolution& s) {
  const ProblemSpec& problem = s.problem;
  ComparisonReport rep{problem.label, s.max_order, {}, {}};
  const int top = std::min(s.max_order, 2);
  if (s.max_order > 2) rep.skipped.push_back("orders above 2: no oracle");

  if (problem.hermitian) {
    for (int i = 1; i <= top; ++i) {
      add_item(rep, "energy", i, rs_energy(problem, i), s.energies.orders[i]);
      auto [lo, up] = rs_ladder(problem, i);
      add_item(rep, "lower", i, lo, s.lower[i]);
      add_item(rep, "raiser", i, up, s.raiser[i]);
    }
    return rep;
  }

  if (!problem.similarity_generator) {
    rep.skipped.push_back("non-Hermitian problem without a known similarity generator");
    return rep;
  }
  if (top >= 1) {
    GradedOp ht = equiv_hermitian(problem, top);
    add_item(rep, "equivalent_hamiltonian_hermitian", top, true, graded_adjoint(ht) == ht);
    add_item(rep, "energy", 1, diagonal_eigenvalue(charge_zero(to_ladder(ht.at(1)))), s.energies.orders[1]);
    if (top >= 2 && !ht.at(1).is_zero())
      rep.skipped.push_back("energy order 2: equivalent Hamiltonian has a g^1 term");
    else if (top >= 2)
      add_item(rep, "energy", 2, equiv_hermitian_energy(problem), s.energies.orders[2]);
  }
  if (problem.metric_generator) {
    const int through = std::min(problem.generator_order, std::max(top, 3));
    add_item(rep, "metric_conjugation", through, true, verify_v_conjugation(problem, through));
  }
  return rep;
}

}  // namespace nullboot
