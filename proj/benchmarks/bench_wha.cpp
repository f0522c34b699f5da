#include <benchmark/benchmark.h>

#include "wha/cstar.hpp"
#include "wha/document.hpp"
#include "wha/integrals.hpp"

using namespace wha;

namespace {
FieldOps<Rat> Q;
FieldOps<Cpx> C{FieldSpec::complex_fp(1e-9)};

Wha<Rat> bbop_m2q() {
  SeparableAlgebra<Rat> B = matrix_algebra(Q, 2);
  Vec<Rat> E(4, Q.zero());
  E[0] = E[3] = Q.from_int(2);
  return bbop(Q, B, E).algebra;
}
}  // namespace

static void BM_axioms_bbop_m2q(benchmark::State& state) {
  Wha<Rat> A = bbop_m2q();
  for (auto _ : state) {
    AxiomReport rep = check_axioms(A);
    benchmark::DoNotOptimize(rep.is_wha);
  }
}
BENCHMARK(BM_axioms_bbop_m2q);

static void BM_integral_space_bbop_m2q(benchmark::State& state) {
  Wha<Rat> A = bbop_m2q();
  for (auto _ : state) {
    auto il = integral_space(A, Side::left);
    benchmark::DoNotOptimize(il.basis.cols);
  }
}
BENCHMARK(BM_integral_space_bbop_m2q);

static void BM_haar_cs3(benchmark::State& state) {
  Wha<Cpx> A = group_algebra(C, symmetric_group_table(3), {}, true);
  for (auto _ : state) {
    auto hd = haar(A);
    benchmark::DoNotOptimize(hd.h.has_value());
  }
}
BENCHMARK(BM_haar_cs3);

static void BM_canonical_grouplike(benchmark::State& state) {
  SeparableAlgebra<Cpx> B = matrix_algebra(C, 2);
  double t = 2.0, scale = t + 1.0 / t;
  Vec<Cpx> gamma(4, C.zero()), E(4, C.zero());
  gamma[0] = E[0] = scale * t;
  gamma[3] = E[3] = scale / t;
  Wha<Cpx> A = bbop(C, B, E, std::optional<Vec<Cpx>>(gamma)).algebra;
  auto cert = cstar_certify(A);
  for (auto _ : state) {
    auto gl = canonical_grouplike(A, cert);
    benchmark::DoNotOptimize(gl.g.c);
  }
}
BENCHMARK(BM_canonical_grouplike);

static void BM_fundamental_iso(benchmark::State& state) {
  Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair((std::size_t)state.range(0)));
  RightWhm<Rat> M = dual_regular_whm(A);
  for (auto _ : state) {
    auto iso = fundamental_iso(A, M);
    benchmark::DoNotOptimize(iso.alpha_beta_residual);
  }
}
BENCHMARK(BM_fundamental_iso)->Arg(2)->Arg(3);

static void BM_document_roundtrip(benchmark::State& state) {
  Document doc = make_document(bbop_m2q());
  for (auto _ : state) {
    std::string text = emit_document(doc);
    Document back = parse_document(text);
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_document_roundtrip);

BENCHMARK_MAIN();
