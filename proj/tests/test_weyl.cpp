#include <random>

#include "doctest.h"
#include "nullboot/error.hpp"
#include "nullboot/weyl.hpp"

using namespace nullboot;

namespace {

ParamPoly c(long num, long den = 1) { return ParamPoly(FieldElem::rational(num, den)); }
const ParamPoly I = ParamPoly(FieldElem::imag());
const ParamPoly S = ParamPoly(FieldElem::sqrt2());
const ParamPoly INV_S2 = ParamPoly(FieldElem(0, Rat(1, 2), 0, 0));

OpPoly X(unsigned m = 1) { return OpPoly::x(m); }
OpPoly P(unsigned n = 1) { return OpPoly::p(n); }
OpPoly one() { return OpPoly(ParamPoly(1L)); }

OpPoly h0() { return P(2) * c(1, 2) + X(2) * c(1, 2); }

OpPoly random_op(std::mt19937& rng, unsigned max_deg) {
  std::uniform_int_distribution<long> v(-4, 4);
  std::uniform_int_distribution<int> coin(0, 2);
  OpPoly r;
  for (unsigned m = 0; m <= max_deg; ++m)
    for (unsigned n = 0; m + n <= max_deg; ++n)
      if (coin(rng) == 0) r.add_term({m, n}, ParamPoly(FieldElem(v(rng), v(rng), v(rng), v(rng))));
  return r;
}

// Q = g Q1 + g^3 Q3 for the cubic oscillator.
GradedOp cubic_q() {
  OpPoly q1 = -(P(3) * c(4, 3) + X() * P() * X() * c(2));
  OpPoly q3 = P(5) * c(128, 15) + X() * P(3) * X() * c(40, 3) + X(2) * P() * X(2) * c(8) - P() * c(32);
  GradedOp q(q1, 1);
  q.add(3, q3);
  return q;
}

}  // namespace

TEST_CASE("normal_product examples") {
  CHECK(P() * X() == X() * P() - OpPoly(I));
  // [p, x^t] = −i t x^{t−1} at t = 3
  CHECK(P() * X(3) == X(3) * P() - X(2) * (I * c(3)));
  OpPoly a = X() + OpPoly::x_ip(0, 1);
  OpPoly b = X() - OpPoly::x_ip(0, 1);
  CHECK(a * b == X(2) + P(2) + one());
}

TEST_CASE("commutator examples") {
  CHECK(commutator(X(), P()) == OpPoly(I));
  for (unsigned t = 2; t <= 5; ++t) {
    // [x², p^t] = 2it p^{t−1} x − t(t−1) p^{t−2}
    OpPoly rhs = P(t - 1) * X() * (I * c(2 * t)) - P(t - 2) * c(t * (t - 1));
    CHECK(commutator(X(2), P(t)) == rhs);
  }
  CHECK(commutator(X(2), P(2)) == X() * P() * (I * c(4)) + one() * c(2));
  // [H0, a] = −a
  OpPoly a = (X() + OpPoly::x_ip(0, 1)) * INV_S2;
  CHECK(to_ladder(commutator(h0(), a)) == -LadderPoly::a());
}

TEST_CASE("adjoint examples") {
  OpPoly a = (X() + OpPoly::x_ip(0, 1)) * INV_S2;
  OpPoly ad = (X() - OpPoly::x_ip(0, 1)) * INV_S2;
  CHECK(adjoint(a) == ad);
  CHECK(adjoint(X() * P() * I) == X() * P() * (-I) - one());
}

TEST_CASE("parity and PT") {
  CHECK(pt_apply(X(3) * I) == X(3) * I);
  CHECK(parity_apply(X(2)) == X(2));
  CHECK(parity_apply(X() * P(2)) == -(X() * P(2)));
  OpPoly shifted = h0() + X() * I;
  CHECK(pt_apply(shifted) == shifted);
  OpPoly cubic = h0() + X(3) * I;
  CHECK(pt_apply(cubic) == cubic);
  CHECK(pt_apply(X() * P() * I) == X() * P() * I);
}

TEST_CASE("ladder basis examples") {
  CHECK(to_ladder(X()) == (LadderPoly::a() + LadderPoly::adag()) * INV_S2);
  CHECK(to_ladder(h0()) == LadderPoly::adag() * LadderPoly::a() + LadderPoly(c(1, 2)));

  LadderPoly x6 = to_ladder(X(6));
  LadderPoly sum = LadderPoly::a() + LadderPoly::adag();
  LadderPoly pw = LadderPoly(ParamPoly(1L));
  for (int k = 0; k < 6; ++k) pw = pw * sum;
  CHECK(x6 == pw * c(1, 8));

  auto parts = charge_decompose(x6);
  std::vector<int> charges;
  for (const auto& [k, v] : parts) charges.push_back(k);
  CHECK(charges == std::vector<int>{-6, -4, -2, 0, 2, 4, 6});
  CHECK(diagonal_eigenvalue(parts.at(0)) == poly_in_level({Rat(15, 8), 5, Rat(15, 4), Rat(5, 2)}));
}

TEST_CASE("charge_decompose and diagonal_eigenvalue") {
  LadderPoly n_op = LadderPoly::adag() * LadderPoly::a();
  CHECK(charge_decompose(n_op).size() == 1);
  auto parts = charge_decompose(LadderPoly::a() + LadderPoly::adag());
  CHECK(parts.at(-1) == LadderPoly::a());
  CHECK(parts.at(1) == LadderPoly::adag());
  CHECK(diagonal_eigenvalue(n_op) == poly_in_level({0, 1}));
  CHECK(diagonal_eigenvalue(LadderPoly({2, 2}, ParamPoly(1L))) == poly_in_level({0, -1, 1}));
  try {
    diagonal_eigenvalue(LadderPoly::a());
    FAIL("expected NonDiagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDiagonal);
  }
}

TEST_CASE("graded_conjugate examples") {
  GradedOp h(h0());
  h.add(1, X() * I);
  // G = 2gp maps H to its adjoint.
  GradedOp hdag(h0());
  hdag.add(1, X() * (-I));
  CHECK(graded_conjugate(h, GradedOp(P() * c(2), 1), 2) == hdag);
  // G = gp gives the equivalent Hermitian Hamiltonian.
  GradedOp ht(h0());
  ht.add(2, one() * c(1, 2));
  CHECK(graded_conjugate(h, GradedOp(P(), 1), 2) == ht);
  CHECK(graded_conjugate(h, GradedOp(P(), 1), 4) == ht);

  // Cubic: e^{−Q/2} H e^{Q/2}.
  GradedOp hc(h0());
  hc.add(1, X(3) * I);
  GradedOp gen = cubic_q().scaled(c(-1, 2));
  OpPoly pert = (one() * c(-4) - X() * P() * (I * c(12)) + X(2) * P(2) * c(6) + X(4) * c(3)) * c(1, 2);
  GradedOp want(h0());
  want.add(2, pert);
  CHECK(graded_conjugate(hc, gen, 2) == want);
  CHECK(adjoint(pert) == pert);

  // V-conjugation e^{−Q} H e^{Q} = H† through g³.
  GradedOp hcdag(h0());
  hcdag.add(1, X(3) * (-I));
  CHECK(graded_conjugate(hc, cubic_q().scaled(c(-1)), 3) == hcdag);
}

TEST_CASE("normal form uniqueness") {
  std::mt19937 rng(3);
  for (int k = 0; k < 30; ++k) {
    OpPoly a = random_op(rng, 3), b = random_op(rng, 3), d = random_op(rng, 3);
    CHECK((a * b) * d == a * (b * d));
  }
  // x p x evaluated left-first and right-first.
  CHECK((X() * P()) * X() == X() * (P() * X()));
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
  std::mt19937 rng(5);
  for (int k = 0; k < 30; ++k) {
    OpPoly a = random_op(rng, 4), b = random_op(rng, 4);
    CHECK(adjoint(a * b) == adjoint(b) * adjoint(a));
    CHECK(adjoint(adjoint(a)) == a);
  }
}

TEST_CASE("ladder round trip") {
  std::mt19937 rng(9);
  for (int k = 0; k < 20; ++k) {
    OpPoly a = random_op(rng, 6);
    CHECK(from_ladder(to_ladder(a)) == a);
  }
  // Ladder product agrees with the x,p product.
  for (int k = 0; k < 10; ++k) {
    OpPoly a = random_op(rng, 3), b = random_op(rng, 3);
    CHECK(to_ladder(a * b) == to_ladder(a) * to_ladder(b));
    CHECK(to_ladder(adjoint(a)) == ladder_adjoint(to_ladder(a)));
  }
}

TEST_CASE("Jacobi identity") {
  std::mt19937 rng(13);
  for (int k = 0; k < 20; ++k) {
    OpPoly a = random_op(rng, 3), b = random_op(rng, 3), d = random_op(rng, 3);
    OpPoly j = commutator(a, commutator(b, d)) + commutator(b, commutator(d, a)) + commutator(d, commutator(a, b));
    CHECK(j.is_zero());
  }
}

TEST_CASE("graded_conjugate by G then −G is the identity through the order") {
  std::mt19937 rng(17);
  for (int k = 0; k < 5; ++k) {
    GradedOp h(random_op(rng, 3));
    h.add(1, random_op(rng, 2));
    GradedOp g(random_op(rng, 2), 1);
    g.add(2, random_op(rng, 2));
    const int order = 3;
    GradedOp back = graded_conjugate(graded_conjugate(h, g, order), g.scaled(c(-1)), order);
    CHECK(back == h.truncated(order));
  }
}
