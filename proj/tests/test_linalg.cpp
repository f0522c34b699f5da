#include <doctest.h>

#include "wha/linalg.hpp"

using namespace wha;

namespace {

FieldOps<Rat> Q;
FieldOps<Cpx> C{FieldSpec::complex_fp(1e-9)};
FieldOps<Gf> F2{FieldSpec::gf(2)};

template <class K>
Mat<K> from_rows(const FieldOps<K>& F, std::vector<std::vector<long>> rows) {
  Mat<K> M(rows.size(), rows[0].size(), F.zero());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j)
      M(i, j) = F.from_int(rows[i][j]);
  return M;
}

}  // namespace

TEST_CASE("solve_affine: identity system") {
  Mat<Rat> I = identity(Q, 3);
  auto sol = solve_affine(Q, I, std::optional<Vec<Rat>>(basis_vec(Q, 3, 0)));
  REQUIRE(sol.particular.has_value());
  CHECK(*sol.particular == basis_vec(Q, 3, 0));
  CHECK(sol.kernel_basis.cols == 0);
  CHECK(sol.rank == 3);
}

TEST_CASE("solve_affine: zero matrix has full kernel") {
  Mat<Rat> Z(2, 2, Q.zero());
  auto sol = solve_affine(Q, Z);
  CHECK(sol.kernel_basis.cols == 2);
  CHECK(sol.rank == 0);
}

TEST_CASE("solve_affine: inconsistent system signals no solution") {
  Mat<Rat> M = from_rows(Q, {{1, 0}, {1, 0}});
  Vec<Rat> b = {Q.one(), Q.from_int(2)};
  auto sol = solve_affine(Q, M, std::optional<Vec<Rat>>(b));
  CHECK(!sol.particular.has_value());
}

TEST_CASE("solve_affine: planted rank oracle over the rationals") {
  // M = P . diag(1,1,1,0,0) . Q with seeded invertible P, Q
  std::mt19937_64 rng(7);
  auto random_invertible = [&]() {
    Mat<Rat> P(5, 5, Q.zero());
    do {
      for (auto& c : P.a) c = Q.random(rng);
    } while (rank_of(Q, P) != 5);
    return P;
  };
  Mat<Rat> P = random_invertible(), Qm = random_invertible();
  Mat<Rat> D(5, 5, Q.zero());
  for (int i = 0; i < 3; ++i) D(i, i) = Q.one();
  Mat<Rat> M = mat_mul(Q, P, mat_mul(Q, D, Qm));
  auto sol = solve_affine(Q, M);
  CHECK(sol.rank == 3);
  CHECK(sol.kernel_basis.cols == 2);
  for (std::size_t t = 0; t < sol.kernel_basis.cols; ++t) {
    Vec<Rat> v = mat_col(sol.kernel_basis, t);
    CHECK(vec_norm(Q, mat_vec(Q, M, v)) == 0.0);
  }
}

TEST_CASE("solve over GF(2)") {
  Mat<Gf> M = from_rows(F2, {{1, 1}, {0, 1}});
  auto x = solve(F2, M, Vec<Gf>{F2.one(), F2.one()});
  REQUIRE(x.has_value());
  CHECK(vec_dist(F2, mat_vec(F2, M, *x), Vec<Gf>{F2.one(), F2.one()}) == 0.0);
  CHECK(rank_of(F2, M) == 2);
}

TEST_CASE("inverse round trip, complex") {
  std::mt19937_64 rng(3);
  Mat<Cpx> M(4, 4, C.zero());
  for (auto& c : M.a) c = C.random(rng);
  auto inv = inverse(C, M);
  REQUIRE(inv.has_value());
  CHECK(mat_dist(C, mat_mul(C, M, *inv), identity(C, 4)) < 1e-9);
}

TEST_CASE("intersect and subspace_equal") {
  // span{e1,e2} cap span{e2,e3} = span{e2}
  Mat<Rat> U(3, 2, Q.zero()), V(3, 2, Q.zero());
  U(0, 0) = Q.one();
  U(1, 1) = Q.one();
  V(1, 0) = Q.one();
  V(2, 1) = Q.one();
  Mat<Rat> W = intersect(Q, U, V);
  REQUIRE(W.cols == 1);
  Mat<Rat> E2(3, 1, Q.zero());
  E2(1, 0) = Q.one();
  CHECK(subspace_equal(Q, W, E2));
}

TEST_CASE("invertible_in_span") {
  SUBCASE("identity alone") {
    auto hit = invertible_in_span(Q, {identity(Q, 2)}, 0);
    REQUIRE(hit.has_value());
    CHECK(rank_of(Q, hit->value) == 2);
  }
  SUBCASE("diagonal pair yields an invertible combination") {
    Mat<Rat> D1(2, 2, Q.zero()), D2(2, 2, Q.zero());
    D1(0, 0) = Q.one();
    D2(1, 1) = Q.one();
    auto hit = invertible_in_span(Q, {D1, D2}, 1);
    REQUIRE(hit.has_value());
    CHECK(rank_of(Q, hit->value) == 2);
  }
  SUBCASE("nilpotent line has no invertible element") {
    Mat<Rat> N(2, 2, Q.zero());
    N(0, 1) = Q.one();
    CHECK(!invertible_in_span(Q, {N}, 2).has_value());
  }
  SUBCASE("GF(2) search is exhaustive on small spans") {
    Mat<Gf> A(2, 2, F2.zero()), B(2, 2, F2.zero());
    A(0, 0) = F2.one();
    A(1, 0) = F2.one();
    B(1, 1) = F2.one();
    B(0, 1) = F2.one();
    // A+B = [[1,1],[1,1]] singular; A alone singular; B alone singular...
    // the only invertible combo must be found if it exists at all
    auto hit = invertible_in_span(F2, {A, B}, 0);
    // A = [[1,0],[1,0]], B = [[0,1],[0,1]]: A+B singular, so none exists
    CHECK(!hit.has_value());
  }
}

TEST_CASE("scalar text round trips") {
  CHECK(scalar_to_string(parse_rational("3/4")) == "3/4");
  CHECK(scalar_to_string(parse_rational("-6/8")) == "-3/4");
  CHECK(scalar_to_string(parse_gf("5 mod 7", 7), 7) == "5 mod 7");
  CHECK(parse_gf("-1", 7).v == 6);
  Cpx z = parse_complex("1+2i");
  CHECK(z.real() == 1.0);
  CHECK(z.imag() == 2.0);
  CHECK(parse_complex("-0.5i").imag() == -0.5);
  CHECK(parse_complex("3e-2").real() == 0.03);
  Cpx w{0.1234567890123456789, -9.87e-7};
  CHECK(parse_complex(scalar_to_string(w)) == w);
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_gf("5 mod 11", 7), Error);
}
