#include <doctest.h>

#include "wha/factories.hpp"
#include "wha/integrals.hpp"

using namespace wha;

namespace {
FieldOps<Rat> Q;

// hand-built function algebra on a finite group: delta_g basis, pointwise
// product, Delta(delta_g) = sum_{ab=g} delta_a (x) delta_b
Wha<Rat> function_algebra(const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = table.size();
  std::size_t e = group_identity(table);
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == e) inv[i] = j;
  Tensor3<Rat> m(n, n, n), d(n, n, n);
  for (std::size_t g = 0; g < n; ++g) m.add(g, g, g, Q.one());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d.add(table[a][b], a, b, Q.one());
  Vec<Rat> unit(n, Q.one());
  Vec<Rat> counit(n, Q.zero());
  counit[e] = Q.one();
  Mat<Rat> S(n, n, Q.zero());
  for (std::size_t g = 0; g < n; ++g) S(inv[g], g) = Q.one();
  return Wha<Rat>::make(Q, n, {}, std::move(m), std::move(unit), std::move(d),
                        std::move(counit), std::move(S));
}
}  // namespace

TEST_CASE("dual of a group algebra is the function algebra") {
  auto table = cyclic_group_table(3);
  Wha<Rat> A = group_algebra(Q, table);
  Wha<Rat> Ahat = dual(A);
  Wha<Rat> funcs = function_algebra(table);
  CHECK(tensors_distance(Ahat, funcs) == 0.0);
  CHECK(check_axioms(Ahat).pass());
}

TEST_CASE("double dual is tensor-identical") {
  std::vector<Wha<Rat>> examples;
  examples.push_back(group_algebra(Q, symmetric_group_table(3)));
  examples.push_back(groupoid_algebra(Q, Groupoid::pair(2)));
  for (const auto& A : examples) CHECK(tensors_equal(A, dual(dual(A))));
}

TEST_CASE("dual of a WHA passes the axioms") {
  Wha<Rat> P = groupoid_algebra(Q, Groupoid::pair(3));
  AxiomReport rep = check_axioms(dual(P), false);
  CHECK(rep.pass());
  CHECK(rep.is_wha);
}

TEST_CASE("arrows: unit laws and brute-forced group actions") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(3));
  const std::size_t n = 3;
  // 1 -> phi = phi and phi <- 1 = phi
  for (std::size_t i = 0; i < n; ++i) {
    Functional<Rat> phi{basis_vec(Q, n, i)};
    CHECK(vec_dist(Q, rharpoon(A, A.one(), phi).c, phi.c) == 0.0);
    CHECK(vec_dist(Q, lharpoon(A, phi, A.one()).c, phi.c) == 0.0);
  }
  // g -> delta_h, computed by brute-force expansion of the coproduct of
  // delta_h = sum_{ab=h} delta_a (x) delta_b
  auto table = cyclic_group_table(3);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      Functional<Rat> dh{basis_vec(Q, n, h)};
      Functional<Rat> got = rharpoon(A, Element<Rat>{basis_vec(Q, n, g)}, dh);
      Vec<Rat> want(n, Q.zero());
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (table[a][b] == h && b == g) want[a] = Q.add(want[a], Q.one());
      CHECK(vec_dist(Q, got.c, want) == 0.0);
    }
}

TEST_CASE("twists") {
  Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
  SUBCASE("op and cop are involutions") {
    CHECK(tensors_equal(A, twist(twist(A, TwistKind::op), TwistKind::op)));
    CHECK(tensors_equal(A, twist(twist(A, TwistKind::cop), TwistKind::cop)));
  }
  SUBCASE("all twists pass the axioms") {
    for (auto kind : {TwistKind::op, TwistKind::cop, TwistKind::opcop})
      CHECK(check_axioms(twist(A, kind), false).pass());
  }
  SUBCASE("the twist table") {
    Wha<Rat> Aop = twist(A, TwistKind::op);
    Wha<Rat> Acop = twist(A, TwistKind::cop);
    Wha<Rat> Aoc = twist(A, TwistKind::opcop);
    // integral spaces: I^L(A^op) = I^R(A), I^L(A_cop) = I^L(A)
    CHECK(subspace_equal(Q, integral_space(Aop, Side::left).basis,
                         integral_space(A, Side::right).basis));
    CHECK(subspace_equal(Q, integral_space(Acop, Side::left).basis,
                         integral_space(A, Side::left).basis));
    CHECK(subspace_equal(Q, integral_space(Aoc, Side::left).basis,
                         integral_space(A, Side::right).basis));
    // counital subalgebras: A^L(A^op) = A^L, A^L(A_cop) = A^R
    auto b = counital_subalgebras(A);
    CHECK(subspace_equal(Q, counital_subalgebras(Aop).al, b.al));
    CHECK(subspace_equal(Q, counital_subalgebras(Acop).al, b.ar));
    CHECK(subspace_equal(Q, counital_subalgebras(Aoc).al, b.ar));
    // dual(A^op) has the tensors of (dual A)_cop
    CHECK(tensors_equal(dual(Aop), twist(dual(A), TwistKind::cop)));
    CHECK(tensors_equal(dual(Acop), twist(dual(A), TwistKind::op)));
    CHECK(tensors_equal(dual(Aoc), twist(dual(A), TwistKind::opcop)));
  }
}

TEST_CASE("kappa pairing: dual A^R with A^L is non-degenerate") {
  for (std::size_t k : {std::size_t(2), std::size_t(3)}) {
    Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(k));
    auto kl = kappa(A, Side::left);
    CHECK(kl.pairing_nondegenerate);
    CHECK(kl.bijective);
    CHECK(kl.domain.cols == k);
  }
}

// seeded property tests: the arrow actions are module actions adjoint to
// multiplication, on random vectors rather than just basis elements
TEST_CASE("arrow properties on random vectors") {
  std::vector<Wha<Rat>> examples;
  examples.push_back(group_algebra(Q, symmetric_group_table(3)));
  examples.push_back(groupoid_algebra(Q, Groupoid::pair(2)));
  {
    // a non-cocommutative example, so the dual product order matters
    SeparableAlgebra<Rat> B = matrix_algebra(Q, 2);
    Vec<Rat> E(4, Q.zero());
    E[0] = E[3] = Q.from_int(2);
    examples.push_back(bbop(Q, B, E).algebra);
  }
  std::mt19937_64 rng(2024);
  for (const auto& A : examples) {
    const std::size_t n = A.dim;
    auto rand_vec = [&] {
      Vec<Rat> v(n, Q.zero());
      for (auto& c : v) c = Q.random(rng);
      return v;
    };
    for (int draw = 0; draw < 8; ++draw) {
      Element<Rat> x{rand_vec()}, y{rand_vec()};
      Functional<Rat> phi{rand_vec()}, psi{rand_vec()};

      // pairing adjunctions
      CHECK(pairing(A, rharpoon(A, x, phi), y) ==
            pairing(A, phi, mul(A, y, x)));
      CHECK(pairing(A, lharpoon(A, phi, x), y) ==
            pairing(A, phi, mul(A, x, y)));
      CHECK(pairing(A, phi, rharpoon(A, psi, x)) ==
            pairing(A, dual_mul(A, phi, psi), x));
      CHECK(pairing(A, phi, lharpoon(A, x, psi)) ==
            pairing(A, dual_mul(A, psi, phi), x));

      // module action laws
      CHECK(vec_dist(Q, rharpoon(A, x, rharpoon(A, y, phi)).c,
                     rharpoon(A, mul(A, x, y), phi).c) == 0.0);
      CHECK(vec_dist(Q, lharpoon(A, lharpoon(A, phi, x), y).c,
                     lharpoon(A, phi, mul(A, x, y)).c) == 0.0);
      CHECK(vec_dist(Q, rharpoon(A, phi, rharpoon(A, psi, x)).c,
                     rharpoon(A, dual_mul(A, phi, psi), x).c) == 0.0);
      CHECK(vec_dist(Q, lharpoon(A, lharpoon(A, x, phi), psi).c,
                     lharpoon(A, x, dual_mul(A, phi, psi)).c) == 0.0);

      // left and right actions commute
      CHECK(vec_dist(Q, lharpoon(A, rharpoon(A, x, phi), y).c,
                     rharpoon(A, x, lharpoon(A, phi, y)).c) == 0.0);
    }
  }
}
