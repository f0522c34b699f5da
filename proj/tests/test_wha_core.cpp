#include <doctest.h>

#include "wha/factories.hpp"

using namespace wha;

namespace {

FieldOps<Rat> Q;
FieldOps<Cpx> C{FieldSpec::complex_fp(1e-9)};
FieldOps<Gf> F2{FieldSpec::gf(2)};

// independent dense oracle for the axiom checks: evaluates the defining
// identities of a weak Hopf algebra with plain dense loops
template <class K>
struct DenseOracle {
  const Wha<K>& A;
  std::size_t n;
  std::vector<K> mu;   // mu[i][j][k]
  std::vector<K> cop;  // cop[k][i][j]

  explicit DenseOracle(const Wha<K>& alg) : A(alg), n(alg.dim) {
    mu.assign(n * n * n, A.F.zero());
    cop.assign(n * n * n, A.F.zero());
    for (auto& e : A.mult.entries) mu[(e.i * n + e.j) * n + e.k] = e.c;
    for (auto& e : A.comult.entries) cop[(e.i * n + e.j) * n + e.k] = e.c;
  }
  K m(std::size_t i, std::size_t j, std::size_t k) const {
    return mu[(i * n + j) * n + k];
  }
  K d(std::size_t k, std::size_t i, std::size_t j) const {
    return cop[(k * n + i) * n + j];
  }

  bool associative() const {
    const auto& F = A.F;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            K lhs = F.zero(), rhs = F.zero();
            for (std::size_t t = 0; t < n; ++t) {
              lhs = F.add(lhs, F.mul(m(i, j, t), m(t, k, l)));
              rhs = F.add(rhs, F.mul(m(j, k, t), m(i, t, l)));
            }
            if (!F.is_zero(F.sub(lhs, rhs))) return false;
          }
    return true;
  }

  bool coproduct_multiplicative() const {
    const auto& F = A.F;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            K lhs = F.zero(), rhs = F.zero();
            for (std::size_t k = 0; k < n; ++k)
              lhs = F.add(lhs, F.mul(m(i, j, k), d(k, a, b)));
            for (std::size_t p = 0; p < n; ++p)
              for (std::size_t q = 0; q < n; ++q)
                for (std::size_t r = 0; r < n; ++r)
                  for (std::size_t s = 0; s < n; ++s)
                    rhs = F.add(rhs, F.mul(F.mul(d(i, p, q), d(j, r, s)),
                                           F.mul(m(p, r, a), m(q, s, b))));
            if (!F.is_zero(F.sub(lhs, rhs))) return false;
          }
    return true;
  }

  bool weak_counit() const {  // (A.6a)
    const auto& F = A.F;
    auto epsm = [&](std::size_t i, std::size_t j) {
      K acc = F.zero();
      for (std::size_t k = 0; k < n; ++k)
        acc = F.add(acc, F.mul(m(i, j, k), A.counit[k]));
      return acc;
    };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          K lhs = F.zero();
          for (std::size_t t = 0; t < n; ++t)
            lhs = F.add(lhs, F.mul(m(x, y, t), epsm(t, z)));
          K rhs = F.zero();
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
              rhs = F.add(rhs, F.mul(d(y, a, b), F.mul(epsm(x, a), epsm(b, z))));
          if (!F.is_zero(F.sub(lhs, rhs))) return false;
        }
    return true;
  }

  bool antipode_left() const {  // (A.8a)
    const auto& F = A.F;
    for (std::size_t k = 0; k < n; ++k) {
      Vec<K> acc(n, F.zero());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (F.is_zero(d(k, i, j))) continue;
          for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
              acc[t] = F.add(acc[t], F.mul(F.mul(d(k, i, j), A.antipode(s, j)),
                                           m(i, s, t)));
        }
      for (std::size_t t = 0; t < n; ++t)
        if (!F.is_zero(F.sub(acc[t], A.pi_l(t, k)))) return false;
    }
    return true;
  }
};

}  // namespace

TEST_CASE("axioms: Z2 group algebra over Q passes, agrees with dense oracle") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(2), {"e", "g"});
  AxiomReport rep = check_axioms(A);
  CHECK(rep.pass());
  CHECK(rep.is_wba);
  CHECK(rep.is_wha);
  CHECK(rep.is_hopf);
  for (auto& l : rep.lines) CHECK(l.residual == 0.0);

  DenseOracle<Rat> oracle(A);
  CHECK(oracle.associative());
  CHECK(oracle.coproduct_multiplicative());
  CHECK(oracle.weak_counit());
  CHECK(oracle.antipode_left());
}

TEST_CASE("axioms: pair groupoid passes and is not Hopf") {
  Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
  AxiomReport rep = check_axioms(A);
  CHECK(rep.pass());
  CHECK(rep.is_wha);
  CHECK(!rep.is_hopf);

  DenseOracle<Rat> oracle(A);
  CHECK(oracle.associative());
  CHECK(oracle.coproduct_multiplicative());
  CHECK(oracle.weak_counit());
  CHECK(oracle.antipode_left());
}

TEST_CASE("axioms: zeroed comultiplication fails the counit axiom") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(2));
  Tensor3<Rat> empty(2, 2, 2);
  Wha<Rat> broken = Wha<Rat>::make(Q, 2, A.labels, A.mult, A.unit,
                                   std::move(empty), A.counit, A.antipode);
  AxiomReport rep = check_axioms(broken, false);
  CHECK(!rep.pass());
  CHECK(!rep.line("A.4 counit")->pass);
}

TEST_CASE("pi: projections behave") {
  Wha<Rat> G = group_algebra(Q, cyclic_group_table(3));
  // ordinary Hopf algebra: pi_L(x) = eps(x) 1
  for (std::size_t j = 0; j < 3; ++j) {
    Element<Rat> x{basis_vec(Q, 3, j)};
    Element<Rat> p = pi(G, x, Side::left);
    CHECK(vec_dist(Q, p.c, vec_scale(Q, eps_of(G, x), G.unit)) == 0.0);
  }
  CHECK(vec_dist(Q, pi(G, G.one(), Side::left).c, G.unit) == 0.0);
  CHECK(vec_dist(Q, pi(G, G.one(), Side::right).c, G.unit) == 0.0);

  // pair groupoid on k objects: Pi^L image has dimension k; brute-force the
  // defining formula Pi^L(x) = eps(1_(1) x) 1_(2) directly
  Wha<Rat> P = groupoid_algebra(Q, Groupoid::pair(3));
  Mat<Rat> brute(P.dim, P.dim, Q.zero());
  for (std::size_t j = 0; j < P.dim; ++j) {
    Element<Rat> x{basis_vec(Q, P.dim, j)};
    for (std::size_t a = 0; a < P.dim; ++a)
      for (std::size_t b = 0; b < P.dim; ++b) {
        if (Q.is_zero(P.delta_unit(a, b))) continue;
        Rat e = eps_of(P, mul(P, Element<Rat>{basis_vec(Q, P.dim, a)}, x));
        brute(b, j) = Q.add(brute(b, j), Q.mul(P.delta_unit(a, b), e));
      }
  }
  CHECK(mat_dist(Q, brute, P.pi_l) == 0.0);
  CHECK(rank_of(Q, P.pi_l) == 3);
}

TEST_CASE("counital subalgebras") {
  Wha<Rat> G = group_algebra(Q, symmetric_group_table(3));
  auto b1 = counital_subalgebras(G);
  CHECK(b1.al.cols == 1);
  CHECK(b1.ar.cols == 1);

  Wha<Rat> P = groupoid_algebra(Q, Groupoid::pair(2));
  auto b2 = counital_subalgebras(P);
  CHECK(b2.al.cols == 2);
  CHECK(b2.ar.cols == 2);
}

TEST_CASE("kappa is a certified isomorphism") {
  Wha<Rat> P = groupoid_algebra(Q, Groupoid::pair(2));
  auto kl = kappa(P, Side::left);
  CHECK(kl.ok());
  CHECK(kl.domain.cols == 2);
  auto kr = kappa(P, Side::right);
  CHECK(kr.ok());

  // kappa^L(1) = 1^ (the counit)
  Vec<Rat> img = mat_vec(Q, kl.full, P.unit);
  CHECK(vec_dist(Q, img, P.counit) == 0.0);
}

TEST_CASE("centers and hypercenter") {
  SUBCASE("ordinary Hopf: Z^L = span{1}") {
    Wha<Rat> G = group_algebra(Q, symmetric_group_table(3));
    auto c = centers(G);
    CHECK(c.zl.cols == 1);
    CHECK(c.zr.cols == 1);
    CHECK(c.kappa_zl_is_zhat);
    CHECK(c.kappa_zr_is_zhat);
    CHECK(c.kappa_z_is_zhat_r);
    CHECK(c.hypercenter_dims_match);
    CHECK(c.common_restriction_residual == 0.0);
    // center of Q[S3] has dimension 3 (class sums)
    CHECK(c.center.cols == 3);
  }
  SUBCASE("pair groupoid: A^L = A^R = diagonal, center is scalar") {
    Wha<Rat> P = groupoid_algebra(Q, Groupoid::pair(2));
    auto c = centers(P);
    CHECK(c.center.cols == 1);  // the algebra is M_2
    CHECK(c.zl.cols == 1);
    CHECK(c.zr.cols == 1);
    CHECK(c.z.cols == 2);
    CHECK(c.hypercenter.cols == 1);
    CHECK(c.kappa_zl_is_zhat);
    CHECK(c.kappa_z_is_zhat_r);
    CHECK(c.hypercenter_dims_match);
  }
}

TEST_CASE("antipode inverse and certification") {
  SUBCASE("group algebra: S^{-1} = S") {
    Wha<Rat> G = group_algebra(Q, symmetric_group_table(3));
    auto data = antipode_inverse(G);
    CHECK(data.pass());
    CHECK(mat_dist(Q, data.inverse, G.antipode) == 0.0);
  }
  SUBCASE("singular antipode is rejected") {
    Wha<Rat> A = group_algebra(Q, cyclic_group_table(2));
    Mat<Rat> bad(2, 2, Q.zero());
    Wha<Rat> broken = Wha<Rat>::make(Q, 2, A.labels, A.mult, A.unit, A.comult,
                                     A.counit, bad);
    CHECK_THROWS_AS(antipode_inverse(broken), Error);
  }
}

TEST_CASE("trivial representation") {
  SUBCASE("ordinary Hopf: one-dimensional and pure") {
    Wha<Rat> G = group_algebra(Q, cyclic_group_table(3));
    auto rep = trivial_representation(G);
    CHECK(rep.carrier.cols == 1);
    CHECK(rep.endo_dim == 1);
    CHECK(rep.pure);
    CHECK(rep.endo_is_d_of_zl);
    CHECK(rep.endo_is_d_of_zr);
    CHECK(rep.restriction_to_al_faithful);
  }
  SUBCASE("pair groupoid: faithful restriction, End = D(Z^L)") {
    Wha<Rat> P = groupoid_algebra(Q, Groupoid::pair(2));
    auto rep = trivial_representation(P);
    auto c = centers(P);
    CHECK(rep.endo_dim == c.zl.cols);
    CHECK(rep.endo_is_d_of_zl);
    CHECK(rep.endo_is_d_of_zr);
    CHECK(rep.restriction_to_al_faithful);
  }
}

TEST_CASE("grouplike elements") {
  Wha<Rat> G = group_algebra(Q, cyclic_group_table(4));
  CHECK(is_grouplike(G, G.one()));
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(is_grouplike(G, Element<Rat>{basis_vec(Q, 4, j)}));
  // e + g is not grouplike
  Vec<Rat> v = basis_vec(Q, 4, 0);
  v[1] = Q.one();
  CHECK(!is_grouplike(G, Element<Rat>{v}));
}

TEST_CASE("hopf degeneration") {
  SUBCASE("group algebra: all five conditions true") {
    auto hd = hopf_degeneration(group_algebra(Q, cyclic_group_table(3)));
    CHECK(hd.is_hopf);
    CHECK(hd.verdicts_agree);
  }
  SUBCASE("pair groupoid: all false") {
    auto hd = hopf_degeneration(groupoid_algebra(Q, Groupoid::pair(2)));
    CHECK(!hd.is_hopf);
    CHECK(hd.verdicts_agree);
    for (auto* l : hd.all()) CHECK(!l->pass);
  }
}

TEST_CASE("calculus invariants hold on exact examples") {
  std::vector<Wha<Rat>> examples;
  examples.push_back(group_algebra(Q, symmetric_group_table(3)));
  examples.push_back(groupoid_algebra(Q, Groupoid::pair(2)));
  for (const auto& A : examples)
    for (auto& line : calculus_invariants(A)) {
      INFO(line.name);
      CHECK(line.pass);
      CHECK(line.residual == 0.0);
    }
}

TEST_CASE("solve_antipode recovers the stripped antipode") {
  Wha<Rat> G = group_algebra(Q, symmetric_group_table(3));
  // rebuild with a wrong-but-well-formed antipode slot, then solve
  auto solved = solve_antipode(G);
  REQUIRE(solved.has_value());
  CHECK(mat_dist(Q, solved->antipode, G.antipode) == 0.0);
  CHECK(solved->a9_residual == 0.0);
}
