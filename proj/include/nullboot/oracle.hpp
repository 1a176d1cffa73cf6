#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nullboot/bootstrap.hpp"

namespace nullboot {

/// |E_n⟩^{(order)} = f |E_n⟩^{(0)} in the ladder basis.
struct StateCorrection {
  int order = 0;
  LadderPoly f;
};

/// Rayleigh–Schrödinger energy correction as a polynomial in n (orders 1, 2).
ParamPoly rs_energy(const ProblemSpec& problem, int order);

/// First- or second-order state correction with the norm fixed to stay 1
/// through that order (no charge-0 part at first order).
StateCorrection rs_state_correction(const ProblemSpec& problem, int order);

/// Ladder corrections (lower, raiser) at order 1 or 2 in the x,p basis.
std::pair<OpPoly, OpPoly> rs_ladder(const ProblemSpec& problem, int order);

/// e^{G} H e^{−G} through g^order with the problem's similarity generator.
/// Throws NonHermitianResult when the result is not self-adjoint.
GradedOp equiv_hermitian(const ProblemSpec& problem, int order);

/// e^{G} H e^{−G} = H† through g^order for the problem's metric generator.
bool verify_v_conjugation(const ProblemSpec& problem, int order);

/// g² energy of the equivalent Hermitian Hamiltonian by first-order
/// perturbation theory in its g² term, as a polynomial in n.
ParamPoly equiv_hermitian_energy(const ProblemSpec& problem);

/// One quantity computed by both routes.
struct ComparisonItem {
  using Value = std::variant<ParamPoly, OpPoly, bool>;
  std::string quantity;
  int order = 0;
  Value oracle;
  Value bootstrap;
  bool match = false;
};

struct ComparisonReport {
  std::string problem;
  int max_order = 0;
  std::vector<ComparisonItem> items;
  // Quantities with no oracle at this order, with the reason.
  std::vector<std::string> skipped;

  bool all_match() const;
};

/// Oracle values against a bootstrap solution: perturbation theory for
/// Hermitian problems, the equivalent Hermitian Hamiltonian otherwise.
ComparisonReport compare_with_oracle(const BootstrapSolution& solution);

}  // namespace nullboot
