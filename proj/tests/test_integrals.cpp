#include <doctest.h>

#include "wha/factories.hpp"
#include "wha/integrals.hpp"

using namespace wha;

namespace {
FieldOps<Rat> Q;
FieldOps<Cpx> C{FieldSpec::complex_fp(1e-9)};
FieldOps<Gf> F2{FieldSpec::gf(2)};

template <class K>
Element<K> sum_of_group_elements(const Wha<K>& A) {
  Vec<K> v(A.dim, A.F.one());
  return {v};
}
}  // namespace

TEST_CASE("integral space of a group algebra is spanned by the group sum") {
  for (std::size_t n : {std::size_t(2), std::size_t(3), std::size_t(4)}) {
    Wha<Rat> A = group_algebra(Q, cyclic_group_table(n));
    IntegralSpace<Rat> IL = integral_space(A, Side::left);
    CHECK(IL.dim() == 1);
    Mat<Rat> expect = cols_to_mat(Q, n, {sum_of_group_elements(A).c});
    CHECK(subspace_equal(Q, IL.basis, expect));
    CHECK(is_integral(A, sum_of_group_elements(A), Side::left));
    CHECK(is_integral(A, sum_of_group_elements(A), Side::right));
  }
}

TEST_CASE("m2z2 integral fixture") {
  Wha<Gf> A = m2z2();
  REQUIRE(check_axioms(A).pass());
  // basis order: e11, e12, e21, e22

  Element<Gf> l1{{F2.one(), F2.zero(), F2.one(), F2.zero()}};  // e11 + e21
  Element<Gf> l2{{F2.zero(), F2.one(), F2.zero(), F2.one()}};  // e12 + e22
  Element<Gf> l{{F2.one(), F2.one(), F2.one(), F2.one()}};

  IntegralSpace<Gf> IL = integral_space(A, Side::left);
  CHECK(IL.dim() == 2);
  CHECK(subspace_contains(F2, IL.basis, l1.c));
  CHECK(subspace_contains(F2, IL.basis, l2.c));

  // l1, l2 normalized
  CHECK(vec_dist(F2, pi(A, l1, Side::left).c, A.unit) == 0.0);
  CHECK(vec_dist(F2, pi(A, l2, Side::left).c, A.unit) == 0.0);

  // neither is non-degenerate; l1 + l2 is, but has Pi^L = 0
  CHECK(!is_nondegenerate(A, l1));
  CHECK(!is_nondegenerate(A, l2));
  CHECK(is_nondegenerate(A, l));
  CHECK(vec_norm(F2, pi(A, l, Side::left).c) == 0.0);

  CHECK(nondegenerate_integral_crosscheck(A, l, true));
  CHECK(nondegenerate_integral_crosscheck(A, l1, false));

  // two-sided structure: I is the line through l1+l2, which the exhaustive
  // GF(2) search must find, and I = j Z^R with S(j) = j
  auto two = two_sided_analysis(A, 0);
  CHECK(two.basis.cols == 1);
  CHECK(two.has_nondegenerate == Verdict::yes);
  CHECK(two.s_invariance_residual == 0.0);
  CHECK(two.equals_j_zr);
}

TEST_CASE("Maschke: normalized integrals and semisimplicity") {
  SUBCASE("C[Z2] is semisimple") {
    Wha<Cpx> A = group_algebra(C, cyclic_group_table(2));
    auto out = normalized_integral(A);
    REQUIRE(out.integral.has_value());
    CHECK(out.semisimple);
    CHECK(out.separability_residual < 1e-9);
    CHECK(vec_dist(C, pi(A, *out.integral, Side::left).c, A.unit) < 1e-12);
  }
  SUBCASE("Q[S3] is semisimple with exact separability idempotent") {
    Wha<Rat> A = group_algebra(Q, symmetric_group_table(3));
    auto out = normalized_integral(A);
    REQUIRE(out.integral.has_value());
    CHECK(out.separability_residual == 0.0);
  }
  SUBCASE("GF(2)[Z2] has no normalized integral") {
    Wha<Gf> A = group_algebra(F2, cyclic_group_table(2));
    auto out = normalized_integral(A);
    CHECK(!out.integral.has_value());
    CHECK(!out.semisimple);
    // the would-be candidate: Pi^L(e+g) = |G| 1 = 0 in characteristic 2
    Element<Gf> s = sum_of_group_elements(A);
    CHECK(vec_norm(F2, pi(A, s, Side::left).c) == 0.0);
  }
  SUBCASE("m2z2 is semisimple: l1 is normalized") {
    auto out = normalized_integral(m2z2());
    REQUIRE(out.integral.has_value());
    CHECK(out.separability_residual == 0.0);
  }
}

TEST_CASE("integral projection") {
  Wha<Rat> A = group_algebra(Q, symmetric_group_table(3));
  Mat<Rat> L = integral_projection_matrix(A, Side::left);
  IntegralSpace<Rat> IL = integral_space(A, Side::left);
  // fixes integrals
  for (std::size_t t = 0; t < IL.dim(); ++t) {
    Vec<Rat> l = mat_col(IL.basis, t);
    CHECK(vec_dist(Q, mat_vec(Q, L, l), l) == 0.0);
  }
  // idempotent with image exactly I^L
  CHECK(mat_dist(Q, mat_mul(Q, L, L), L) == 0.0);
  CHECK(subspace_equal(Q, column_space(Q, L), IL.basis));
  // adjoint relation against the dual-side projection
  Mat<Rat> R = integral_projection_matrix(A, Side::right);
  Mat<Rat> Lhat = integral_projection_matrix(dual(A), Side::left);
  CHECK(mat_dist(Q, transpose(Lhat), R) == 0.0);
}

TEST_CASE("dual pairs of left integrals") {
  SUBCASE("Q[Z2]: l = e + g pairs with delta_e") {
    Wha<Rat> A = group_algebra(Q, cyclic_group_table(2));
    Element<Rat> l = sum_of_group_elements(A);
    auto dp = dual_left_integral(A, l);
    CHECK(dp.ok(0.0));
    Vec<Rat> delta_e = basis_vec(Q, 2, 0);
    CHECK(vec_dist(Q, dp.lambda.c, delta_e) == 0.0);
  }
  SUBCASE("degenerate integral is rejected") {
    Wha<Gf> A = m2z2();
    Element<Gf> l1{{F2.one(), F2.zero(), F2.one(), F2.zero()}};
    CHECK_THROWS_AS(dual_left_integral(A, l1), Error);
  }
  SUBCASE("quasibasis of the dual and its index") {
    // (l, lambda) with l normalized: Index lambda = 1
    Wha<Rat> A = group_algebra(Q, cyclic_group_table(3));
    Element<Rat> l{{Rat(1, 3), Rat(1, 3), Rat(1, 3)}};  // normalized
    CHECK(vec_dist(Q, pi(A, l, Side::left).c, A.unit) == 0.0);
    auto dp = dual_left_integral(A, l);
    // the quasibasis of lambda (a functional on A) is l_(2) (x) S^{-1}(l_(1));
    // column t of `partners` pairs with basis vector b_t
    auto qb = quasibasis(A, dp.lambda);
    Mat<Rat> dl = comul_mat(A, l);
    Mat<Rat> Sinv = antipode_inverse_mat(A);
    Mat<Rat> expect(A.dim, A.dim, Q.zero());
    for (std::size_t s = 0; s < A.dim; ++s)
      for (std::size_t t = 0; t < A.dim; ++t)
        for (std::size_t a = 0; a < A.dim; ++a)
          expect(s, t) = Q.add(expect(s, t), Q.mul(dl(a, s), Sinv(t, a)));
    CHECK(mat_dist(Q, qb.partners, expect) == 0.0);
    // index of lambda = S^{-1}(Pi^L(l)) = 1 for normalized l
    CHECK(vec_dist(Q, qb.index.c, A.unit) == 0.0);

    // the general index formula on a non-normalized integral
    Element<Rat> l3{{Q.one(), Q.one(), Q.one()}};  // Pi^L(l3) = 3
    auto dp3 = dual_left_integral(A, l3);
    auto qb3 = quasibasis(A, dp3.lambda);
    Vec<Rat> want = mat_vec(Q, antipode_inverse_mat(A),
                            pi(A, l3, Side::left).c);
    CHECK(vec_dist(Q, qb3.index.c, want) == 0.0);
  }
}

TEST_CASE("quasibasis of the matrix trace") {
  for (std::size_t k : {std::size_t(2), std::size_t(3)}) {
    Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(k));
    // trace functional: tr(e_ab) = delta_ab
    Vec<Rat> tr(A.dim, Q.zero());
    for (std::size_t a = 0; a < k; ++a) tr[a * k + a] = Q.one();
    auto qb = quasibasis(A, Functional<Rat>{tr});
    CHECK(qb.defining_residual == 0.0);
    CHECK(qb.index_central);
    // index = k . 1
    CHECK(vec_dist(Q, qb.index.c, vec_scale(Q, Q.from_int((long)k), A.unit)) == 0.0);
    // partner of e_ab is e_ba
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        CHECK(vec_dist(Q, mat_col(qb.partners, a * k + b),
                       basis_vec(Q, A.dim, b * k + a)) == 0.0);
  }
}

TEST_CASE("quasibasis of the identity on the trivial algebra") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(1));
  auto qb = quasibasis(A, Functional<Rat>{{Q.one()}});
  CHECK(vec_dist(Q, qb.index.c, A.unit) == 0.0);
}

TEST_CASE("modular automorphisms") {
  SUBCASE("any trace has theta = id") {
    Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
    Vec<Rat> tr(A.dim, Q.zero());
    tr[0] = tr[3] = Q.one();
    auto md = modular_automorphism(A, Functional<Rat>{tr});
    CHECK(md.defining_residual == 0.0);
    CHECK(mat_dist(Q, md.theta, identity(Q, A.dim)) == 0.0);
    CHECK(md.is_qtrace);  // S^2 = id here
  }
  SUBCASE("chi is a q-trace") {
    Wha<Rat> A = group_algebra(Q, symmetric_group_table(3));
    Functional<Rat> x = chi(A);
    auto md = modular_automorphism(A, x);
    CHECK(md.is_qtrace);
  }
}

TEST_CASE("chi") {
  SUBCASE("one-dimensional Hopf algebra: chi = 1^") {
    Wha<Rat> A = group_algebra(Q, cyclic_group_table(1));
    CHECK(vec_dist(Q, chi(A).c, A.counit) == 0.0);
  }
  SUBCASE("group algebra: chi(g) = |G| delta_{g,e}") {
    Wha<Rat> A = group_algebra(Q, symmetric_group_table(3));
    Functional<Rat> x = chi(A);
    Vec<Rat> want(A.dim, Q.zero());
    want[group_identity(symmetric_group_table(3))] = Q.from_int(6);
    CHECK(vec_dist(Q, x.c, want) == 0.0);
  }
  SUBCASE("chi is a left integral in the dual") {
    Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
    Functional<Rat> x = chi(A);
    Wha<Rat> Ahat = dual(A);
    CHECK(is_integral(Ahat, Element<Rat>{x.c}, Side::left));
  }
  SUBCASE("l -> chi = S^2-dual(1^ <- l) for every left integral") {
    std::vector<Wha<Rat>> examples;
    examples.push_back(group_algebra(Q, cyclic_group_table(4)));
    examples.push_back(groupoid_algebra(Q, Groupoid::pair(2)));
    for (const auto& A : examples) {
      Functional<Rat> x = chi(A);
      IntegralSpace<Rat> IL = integral_space(A, Side::left);
      for (std::size_t t = 0; t < IL.dim(); ++t) {
        Element<Rat> l{mat_col(IL.basis, t)};
        Functional<Rat> lhs = rharpoon(A, l, x);
        Functional<Rat> rhs = dual_antipode_of(
            A, dual_antipode_of(A, lharpoon(A, Functional<Rat>{A.counit}, l)));
        CHECK(vec_dist(Q, lhs.c, rhs.c) == 0.0);
      }
    }
  }
}

TEST_CASE("Haar integrals") {
  SUBCASE("group algebras: h = |G|^{-1} sum g, matching the affine oracle") {
    Wha<Rat> A = group_algebra(Q, symmetric_group_table(3));
    auto hd = haar(A);
    REQUIRE(hd.h.has_value());
    Vec<Rat> want(A.dim, Rat(1, 6));
    CHECK(vec_dist(Q, hd.h->c, want) == 0.0);
    CHECK(hd.two_sided);
    CHECK(hd.normalization_residual == 0.0);
    CHECK(hd.idempotent_residual == 0.0);
    CHECK(hd.s_invariance_residual == 0.0);
    CHECK(hd.unique);
    CHECK(hd.alt_criterion_agrees);

    // independent brute-force solve of the two-sidedness + normalization
    // system, assembled here from scratch
    const std::size_t n = A.dim;
    std::vector<Mat<Rat>> blocks;
    for (std::size_t i = 0; i < n; ++i) {
      Element<Rat> bi{basis_vec(Q, n, i)};
      blocks.push_back(mat_sub(Q, left_mult_mat(A, bi),
                               left_mult_mat(A, pi(A, bi, Side::left))));
      blocks.push_back(mat_sub(Q, right_mult_mat(A, bi),
                               right_mult_mat(A, pi(A, bi, Side::right))));
    }
    blocks.push_back(A.pi_l);
    Mat<Rat> sys = vstack(Q, blocks);
    Vec<Rat> rhs(sys.rows, Q.zero());
    for (std::size_t t = 0; t < n; ++t) rhs[sys.rows - n + t] = A.unit[t];
    auto sol = solve_affine(Q, sys, std::optional<Vec<Rat>>(rhs));
    REQUIRE(sol.particular.has_value());
    CHECK(sol.kernel_basis.cols == 0);
    CHECK(vec_dist(Q, *sol.particular, hd.h->c) == 0.0);
  }
  SUBCASE("GF(2)[Z2] has no Haar integral") {
    auto hd = haar(group_algebra(F2, cyclic_group_table(2)));
    CHECK(!hd.h.has_value());
    CHECK(hd.alt_criterion_agrees);
  }
  SUBCASE("m2z2 has no Haar integral (chi = 0 over GF(2))") {
    auto hd = haar(m2z2());
    CHECK(!hd.h.has_value());
    CHECK(hd.chi_rank == 0);
  }
  SUBCASE("pair groupoid over Q has the uniform Haar element") {
    Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
    auto hd = haar(A);
    REQUIRE(hd.h.has_value());
    CHECK(hd.unique);
    // h = (1/2) sum e_ab for the pair groupoid on 2 objects
    Vec<Rat> want(A.dim, Rat(1, 2));
    CHECK(vec_dist(Q, hd.h->c, want) == 0.0);
  }
}

TEST_CASE("two-sided integrals") {
  SUBCASE("Haar-admitting algebra: S(i) = i and I = j Z^R") {
    Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
    auto two = two_sided_analysis(A, 7);
    CHECK(two.basis.cols == 1);
    CHECK(two.has_nondegenerate == Verdict::yes);
    CHECK(two.s_invariance_residual == 0.0);
    CHECK(two.equals_j_zr);
  }
  SUBCASE("GF(2)[Z2]: e+g is a non-degenerate two-sided integral") {
    // Frobenius without semisimplicity
    Wha<Gf> A = group_algebra(F2, cyclic_group_table(2));
    auto two = two_sided_analysis(A, 0);
    CHECK(two.basis.cols == 1);
    CHECK(two.has_nondegenerate == Verdict::yes);
    CHECK(two.s_invariance_residual == 0.0);
    CHECK(two.equals_j_zr);
  }
  SUBCASE("a search miss over GF(2) reports unknown, never no") {
    // m2z2 has I = span{l1 + l2} ... which IS non-degenerate, so instead
    // exercise the verdict logic through invertible_in_span directly on a
    // nilpotent line where nothing invertible exists
    Mat<Gf> N(2, 2, F2.zero());
    N(0, 1) = F2.one();
    CHECK(!invertible_in_span(F2, {N}, 0).has_value());
  }
}

TEST_CASE("symmetric algebras and S^4") {
  Wha<Rat> A = group_algebra(Q, symmetric_group_table(3));
  auto sym = symmetric_and_s4(A, 3);
  CHECK(sym.s2_inner == Verdict::yes);
  CHECK(sym.symmetric == Verdict::yes);
  REQUIRE(sym.trace_witness.has_value());
  CHECK(sym.trace_witness_residual == 0.0);
  REQUIRE(sym.s4_data_available);
  CHECK(sym.s4_residual == 0.0);
  CHECK(sym.theta2_residual == 0.0);
  CHECK(sym.psi_residual == 0.0);
  CHECK(sym.pairing_residual == 0.0);
}

TEST_CASE("Frobenius tests") {
  SUBCASE("ordinary Hopf algebras") {
    for (std::size_t n : {std::size_t(2), std::size_t(3), std::size_t(4)}) {
      auto fr = frobenius_test(group_algebra(Q, cyclic_group_table(n)), 1);
      CHECK(fr.frobenius);
      CHECK(fr.dim_ir == 1);
      CHECK(fr.dim_al == 1);
      CHECK(fr.integral_found == Verdict::yes);
      CHECK(fr.criteria_agree);
    }
  }
  SUBCASE("m2z2: dim I^R = dim A^L = 2 and l1+l2 is found exhaustively") {
    auto fr = frobenius_test(m2z2(), 0);
    CHECK(fr.frobenius);
    CHECK(fr.dim_ir == 2);
    CHECK(fr.dim_al == 2);
    CHECK(fr.integral_found == Verdict::yes);
    REQUIRE(fr.nondegenerate_l.has_value());
    CHECK(is_nondegenerate(m2z2(), *fr.nondegenerate_l));
  }
}

TEST_CASE("annihilator duality (quasi-Frobenius evidence)") {
  SUBCASE("ordinary Hopf: Ker Pi^L = Ker eps") {
    Wha<Rat> A = group_algebra(Q, cyclic_group_table(3));
    Mat<Rat> ker = kernel(Q, A.pi_l);
    Mat<Rat> eps_row(1, A.dim, Q.zero());
    for (std::size_t i = 0; i < A.dim; ++i) eps_row(0, i) = A.counit[i];
    CHECK(subspace_equal(Q, ker, kernel(Q, eps_row)));
    auto rep = annihilator_duality_check(A);
    CHECK(rep.pass());
    // right annihilator of Ker Pi^L is I^L
    CHECK(subspace_equal(Q, right_annihilator(A, ker),
                         integral_space(A, Side::left).basis));
  }
  SUBCASE("every example passes") {
    auto rep1 = annihilator_duality_check(groupoid_algebra(Q, Groupoid::pair(2)));
    CHECK(rep1.pass());
    auto rep2 = annihilator_duality_check(m2z2());
    CHECK(rep2.pass());
  }
}

TEST_CASE("integral invariant suite on exact examples") {
  std::vector<Wha<Rat>> examples;
  examples.push_back(group_algebra(Q, cyclic_group_table(3)));
  examples.push_back(groupoid_algebra(Q, Groupoid::pair(2)));
  for (const auto& A : examples)
    for (auto& line : integral_invariants(A, 5)) {
      INFO(line.name);
      CHECK(line.pass);
    }
  for (auto& line : integral_invariants(m2z2(), 5)) {
    INFO(line.name);
    CHECK(line.pass);
  }
}
