#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nullboot/linsolve.hpp"
#include "nullboot/moments.hpp"

namespace nullboot {

enum class Branch { Lower, Raise };

/// −1 for the lowering branch, +1 for the raising one.
inline int step_of(Branch b) { return b == Branch::Lower ? -1 : 1; }
std::string to_string(Branch b);

/// L^{(i)} = Σ_{m+n<=K} A(i,m,n) x^m (ip)^n.
struct LadderAnsatz {
  int order = 0;
  unsigned K = 0;
  Branch branch = Branch::Lower;
  std::vector<Sym> unknowns;
  OpPoly body;
};

LadderAnsatz build_ansatz(int order, unsigned K, Branch branch);

/// Energy coefficients E^{(i)} as polynomials in the level symbol n.
struct EnergySeries {
  std::vector<ParamPoly> orders;
};

/// What is known about one branch below the order being solved.
struct BranchHistory {
  Branch branch = Branch::Lower;
  std::vector<OpPoly> ladder;  // L^{(0)}, …, L^{(i−1)}
};

/// Test operators x^m (ip)^n with m + n <= max_degree.
std::vector<OpMonomial> test_operators(unsigned max_degree);

/// g^i coefficient of ⟨O (H − ε) L⟩ for every test operator O, as linear
/// equations in the ansatz unknowns and (for i >= 1) the shifted-level energy
/// Es<i>. Energies below order i are substituted through n = E0 − 1/2; at
/// order 0 the shifted level is E0 + delta.
LinSys assemble_null_system(const LadderAnsatz& ansatz, const MomentTable& table, const EnergySeries& energies,
                            const BranchHistory& history, const std::vector<OpMonomial>& test_ops, int delta);

struct BootstrapConfig {
  int max_order = 2;
  std::vector<unsigned> ansatz_degrees;  // empty: the problem's schedule
  unsigned test_extra_cap = 6;           // M runs from K+1 up to K+1+cap
  unsigned verify_extra = 3;             // verification uses M + verify_extra
  bool cross_check_basis = true;
};

/// Result of solving the null system at one order for one branch.
struct OrderPartial {
  int order = 0;
  Branch branch = Branch::Lower;
  LadderAnsatz ansatz;
  LinSolution solution;
  unsigned test_degree = 0;  // M at which the solution stabilized
  int delta = 0;             // order-0 energy step
  // Ansatz body with the solution substituted; may still carry free
  // unknowns, E0 and E<i>.
  OpPoly body;
  // Shifted-level energy ε_i in terms of E0 and E<i> (order 0: E0 + delta).
  ParamPoly shifted_energy;
};

OrderPartial solve_order(const ProblemSpec& problem, const MomentTable& table, int order, Branch branch,
                         const EnergySeries& energies, const BranchHistory& history, const BootstrapConfig& config);

/// E_0^{(i)} from ⟨ground| O L_− |ground⟩ = 0.
FieldElem ground_condition(const MomentTable& table, const OrderPartial& lower, const EnergySeries& energies,
                           const BranchHistory& history);

/// The polynomial P(n) with P(n + step) = recursion(E0 = n + 1/2, E<i> = P(n)) and P(0) = ground.
ParamPoly solve_energy_recursion(const ParamPoly& recursion, int order, int step, const FieldElem& ground,
                                 unsigned degree_bound);

/// Removes every positive power of E0 from the ladder coefficients.
OrderPartial impose_energy_independence(const OrderPartial& partial, const EnergySeries& energies);

/// Fixes the remaining unknowns from ⟨L†L⟩ = E0 ∓ 1/2 at order g^i.
OpPoly impose_normalization(const OrderPartial& partial, const MomentTable& table, const EnergySeries& energies,
                            const BranchHistory& history);

struct ResidualItem {
  std::string check;
  int order = 0;
  Branch branch = Branch::Lower;
  bool ok = true;
  bool required = true;  // report-only checks never fail the run
  std::string detail;
};

struct ResidualReport {
  std::vector<ResidualItem> items;
  bool all_required_ok() const;
  const ResidualItem* find(const std::string& check, int order, Branch branch) const;
};

struct BootstrapSolution {
  ProblemSpec problem;
  int max_order = 0;
  EnergySeries energies;
  std::vector<OpPoly> lower;
  std::vector<OpPoly> raiser;
  std::vector<unsigned> ansatz_degrees;
  std::vector<unsigned> test_degrees;  // M used at each order (max over branches)
  std::vector<int> order0_steps;       // energy step of the lowering and raising branches
  ResidualReport diagnostics;
};

/// Degrees the moment table needs for a run with the given ansatz degrees.
std::vector<unsigned> bootstrap_table_degrees(const ProblemSpec& problem, int max_order,
                                              const std::vector<unsigned>& ansatz_degrees, unsigned max_test_degree);

/// Re-evaluates the null equations with test operators up to `test_degree`,
/// the normalization, and the operator identities.
ResidualReport verify_solution(const BootstrapSolution& solution, const MomentTable& table, unsigned test_degree);

/// Full run: moment table, orders 0 … max_order for both branches, verification.
BootstrapSolution bootstrap(const ProblemSpec& problem, const BootstrapConfig& config);

/// Σ_i g^i L^{(i)}.
GradedOp graded_ladder(const std::vector<OpPoly>& per_order);

}  // namespace nullboot
