#include <benchmark/benchmark.h>

#include "desing/contact.hpp"
#include "desing/delta.hpp"
#include "desing/trace.hpp"

using namespace desing;

static void BM_DeltaChain(benchmark::State& state) {
  Ring r = make_ring({"X", "Y", "Z"});
  for (auto _ : state) {
    Ideal J = Ideal::from_strings(r, {"Z^3+X*Y^2*Z+X^5"});
    Ideal d = delta_power(J, 2);
    benchmark::DoNotOptimize(d.groebner());
  }
}
BENCHMARK(BM_DeltaChain);

static void BM_MaxOrder(benchmark::State& state) {
  Ring r = make_ring({"X", "Y", "Z"});
  for (auto _ : state) {
    Ideal J = Ideal::from_strings(r, {"Z^3+X*Y^2*Z+X^5"});
    benchmark::DoNotOptimize(max_order(J));
  }
}
BENCHMARK(BM_MaxOrder);

static void BM_CoefficientIdeal(benchmark::State& state) {
  Ring r = make_ring({"Z", "X", "Y"});
  for (auto _ : state) {
    Couple g{Ideal::from_strings(r, {"Z^3+X*Y^2*Z+X^5"}), 3};
    benchmark::DoNotOptimize(coefficient_ideal(g, 0));
  }
}
BENCHMARK(BM_CoefficientIdeal);

static void BM_PrincipalizeCurve(benchmark::State& state) {
  Ring r = make_ring({"x", "y"});
  const std::string f = "x^2-y^" + std::to_string(state.range(0));
  Ideal I = Ideal::from_strings(r, {f});
  for (auto _ : state) {
    auto t = principalize(I);
    benchmark::DoNotOptimize(t.nodes.size());
  }
}
BENCHMARK(BM_PrincipalizeCurve)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_MonomialPhase(benchmark::State& state) {
  Ring r = make_ring({"x1", "x2", "x3"});
  Ideal J = Ideal::from_strings(r, {"x1^6*x2^7*x3^4"});
  for (auto _ : state) benchmark::DoNotOptimize(resolve_object(J, 5, {0, 1, 2}).nodes.size());
}
BENCHMARK(BM_MonomialPhase)->Unit(benchmark::kMillisecond);

static void BM_TraceRoundTrip(benchmark::State& state) {
  Ring r = make_ring({"x", "y"});
  const std::string j = trace_to_json(principalize(Ideal::from_strings(r, {"x^2-y^5"})));
  for (auto _ : state) benchmark::DoNotOptimize(trace_to_json(trace_from_json(j)).size());
}
BENCHMARK(BM_TraceRoundTrip)->Unit(benchmark::kMillisecond);

static void BM_Verify(benchmark::State& state) {
  Ring r = make_ring({"x", "y"});
  const auto t = principalize(Ideal::from_strings(r, {"x^2-y^5"}));
  for (auto _ : state) benchmark::DoNotOptimize(verify_trace(t).checks);
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
