#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nullboot/series.hpp"
#include "nullboot/weyl.hpp"

namespace nullboot {

/// H = p²/2 + potential_base + g·perturbation.
struct ProblemSpec {
  std::string label;
  OpPoly potential_base;  // x only
  OpPoly perturbation;    // x only, carries one power of g
  bool hermitian = true;
  bool parity_even = true;
  // Ansatz degree per order; empty means 1 + i·(deg(perturbation) − 1).
  std::vector<unsigned> ansatz_degrees;

  // G with e^{G} H e^{−G} Hermitian, and G with e^{G} H e^{−G} = H†, when known.
  std::optional<GradedOp> similarity_generator;
  std::optional<GradedOp> metric_generator;
  // Highest order through which the generators above are exact.
  int generator_order = 0;

  static ProblemSpec sextic();
  static ProblemSpec shifted();
  static ProblemSpec cubic();

  GradedOp hamiltonian() const;
  unsigned perturbation_degree() const { return perturbation.degree(); }
  unsigned ansatz_degree(int order) const;

  /// Checks the structural requirements; throws ValidationError.
  void validate() const;
};

using MomentKey = OpMonomial;

/// Σ g^grade coeff ⟨key⟩ with coefficients polynomial in the full energy E.
class MomentExpr {
 public:
  using Key = std::pair<int, MomentKey>;
  using Terms = std::map<Key, ParamPoly>;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const ParamPoly& coeff(int grade, MomentKey key) const;

  MomentExpr& add(int grade, MomentKey key, const ParamPoly& c);
  MomentExpr& operator+=(const MomentExpr& o);
  MomentExpr scaled(const ParamPoly& c, int grade_shift = 0) const;

  /// The bracket of a graded operator, term by term.
  static MomentExpr expectation(const GradedOp& a);

  friend bool operator==(const MomentExpr&, const MomentExpr&) = default;
  std::string str() const;

 private:
  Terms terms_;
};

/// A recursion identity Σ … = 0 together with the test operator family that produced it.
struct MomentRelation {
  enum class Family {
    MixedFirst,   // O = x^{t+1} in ⟨[H,O]⟩ = 0: gives ⟨x^t p⟩
    PureX,        // O = x^t p in ⟨[H,O]⟩ = 0, reduced to pure x moments
    PowerReduce,  // O = x^m p^{n−2} in ⟨O H⟩ = E⟨O⟩: gives ⟨x^m p^n⟩
    PFirst,       // O = p^{t+1} in ⟨[H,O]⟩ = 0
    PSecond,      // O = p^t in ⟨O H⟩ = E⟨O⟩
    PureP,        // O = p^t x in ⟨[H,O]⟩ = 0, reduced to pure p moments where possible
  };
  Family family;
  std::vector<unsigned> params;
  MomentExpr expr;

  /// True when this relation is a nonzero multiple of `other`.
  bool proportional_to(const MomentExpr& other) const;
};

std::string to_string(MomentRelation::Family f);

/// One member of a recursion family with parameters (t) or (m, n).
MomentRelation recursion(const ProblemSpec& problem, MomentRelation::Family family,
                         const std::vector<unsigned>& params);

/// Every family member whose test operator has degree <= max_degree.
std::vector<MomentRelation> instantiate_recursions(const ProblemSpec& problem, unsigned max_degree);

/// The basis moments ⟨x^D⟩ left unreduced by the pure-x chain.
std::vector<MomentKey> detect_basis(const ProblemSpec& problem);

/// Reduces ⟨x^m p^n⟩ to a Laurent series in g whose coefficients are
/// polynomials in the full energy E and the basis moments X<deg>.
GSeries reduce_moment(MomentKey key, const ProblemSpec& problem);

/// Moment values as g-series in E0, E1, …, each known through its own order.
class MomentTable {
 public:
  struct Entry {
    std::vector<ParamPoly> coeffs;  // orders 0 … coeffs.size()−1
  };

  MomentTable() = default;
  MomentTable(ProblemSpec problem, int order, std::vector<MomentKey> basis, std::map<MomentKey, Entry> entries);

  const ProblemSpec& problem() const { return problem_; }
  int order() const { return order_; }
  const std::vector<MomentKey>& basis() const { return basis_; }
  const std::map<MomentKey, Entry>& entries() const { return entries_; }

  /// Highest order available for `key`, −1 when it is not stored.
  int available_order(MomentKey key) const;
  /// Order-j coefficient; OrderExceeded when it was not computed.
  const ParamPoly& coeff(MomentKey key, int j) const;
  GSeries series(MomentKey key) const;

  /// Degree d moments are stored at order j for d <= degrees()[j].
  unsigned max_degree(int j) const;

 private:
  ProblemSpec problem_;
  int order_ = 0;
  std::vector<MomentKey> basis_;
  std::map<MomentKey, Entry> entries_;
};

/// Basis moment series from singularity cancellation. The table holds only
/// the basis entries and ⟨1⟩.
MomentTable fix_basis_series(const ProblemSpec& problem, int order);

/// Full moment table through `order`, with all ⟨x^m p^n⟩ of degree <=
/// degrees[j] known at order j. Degrees are raised as needed so that the
/// recursion closes. When `cross_check` is set, the basis entries are
/// compared against fix_basis_series.
MomentTable build_moment_table(const ProblemSpec& problem, int order, std::vector<unsigned> degrees,
                               bool cross_check = true);

/// Default degrees: (ansatz degree at `order`) + (perturbation degree) + 2, closed.
std::vector<unsigned> default_table_degrees(const ProblemSpec& problem, int order);

/// ⟨A⟩ through g^order. Coefficients of A may carry their own symbols.
GSeries evaluate_expectation(const GradedOp& a, const MomentTable& table, int order);
GSeries evaluate_expectation(const OpPoly& a, const MomentTable& table);

/// E0 + E1 g + … + Ek g^k.
GSeries energy_series(int order);

}  // namespace nullboot
