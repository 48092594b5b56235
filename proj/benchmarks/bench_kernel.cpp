// Microbenchmarks for the hot kernel paths: graded products, operator
// extraction, jet prolongation/pairing and the SN bracket.

#include <benchmark/benchmark.h>

#include "gjet/checks.hpp"

using namespace gjet;

namespace {

ContextPtr bench_context() {
  return make_context({{"x", 0}, {"th", 1}, {"p", 2}, {"eta", -1}});
}

Poly dense_poly(const ContextPtr& ctx, int max_weight, std::uint64_t seed) {
  checks::Rng rng(seed);
  Poly p(ctx);
  for (const auto& index : multi_indices_up_to(*ctx, max_weight))
    p += Poly::monomial(ctx, index, rng.small_rational());
  return p;
}

void BM_PolyMul(benchmark::State& state) {
  const auto ctx = bench_context();
  const Poly f = dense_poly(ctx, int(state.range(0)), 11);
  const Poly g = dense_poly(ctx, int(state.range(0)), 12);
  for (auto _ : state) {
    Poly h = f * g;
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_PolyMul)->Arg(2)->Arg(4)->Arg(6);

void BM_LeibnizMulti(benchmark::State& state) {
  const auto ctx = bench_context();
  const Poly f = dense_poly(ctx, 3, 21).homogeneous_parts().begin()->second;
  const Poly g = dense_poly(ctx, 3, 22);
  const MultiIndex I({int(state.range(0)), 1, 0, 0});
  for (auto _ : state) {
    Poly h = leibniz_multi(I, f, g);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_LeibnizMulti)->Arg(1)->Arg(2)->Arg(3);

void BM_ExtractRoundtrip(benchmark::State& state) {
  const auto ctx = bench_context();
  const auto bundle = make_bundle(ctx, {{"e0", 0}, {"e1", 1}});
  checks::Rng rng(31);
  const DiffOp d = checks::random_operator(rng, bundle, int(state.range(0)));
  for (auto _ : state) {
    auto r = extract_coeffs(as_oracle(d), d.order());
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExtractRoundtrip)->Arg(1)->Arg(2)->Arg(3);

void BM_ProlongAndPair(benchmark::State& state) {
  const auto ctx = bench_context();
  const auto bundle = make_bundle(ctx, {{"e0", 0}, {"e1", 1}});
  checks::Rng rng(41);
  const DiffOp d = checks::random_operator(rng, bundle, 2);
  const Section psi = checks::random_section(rng, bundle, 4);
  const int k = int(state.range(0));
  for (auto _ : state) {
    Section out = operator_on_jet(d, prolong(psi, k));
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_ProlongAndPair)->Arg(2)->Arg(3)->Arg(4);

void BM_SnBracket(benchmark::State& state) {
  const auto ctx = bench_context();
  checks::Rng rng(51);
  const SymTensor X = checks::random_multivector(rng, ctx, int(state.range(0)));
  const SymTensor Y = checks::random_multivector(rng, ctx, 2);
  for (auto _ : state) {
    SymTensor z = sn_bracket(X, Y);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_SnBracket)->Arg(1)->Arg(2);

void BM_Curvature(benchmark::State& state) {
  const auto ctx = bench_context();
  const auto bundle = make_bundle(ctx, {{"e0", 0}, {"e1", 1}});
  checks::Rng rng(61);
  const Connection conn = checks::random_connection(rng, bundle);
  const SymTensor X = SymTensor::coordinate_field(ctx, 1);
  const SymTensor Y = SymTensor::coordinate_field(ctx, 3);
  for (auto _ : state) {
    DiffOp r = curvature(conn, X, Y);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Curvature);

}  // namespace

BENCHMARK_MAIN();
