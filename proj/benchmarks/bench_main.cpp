#include "maxab/cartan.hpp"
#include "maxab/classify.hpp"
#include "maxab/matgroups.hpp"
#include "maxab/verify.hpp"

#include <benchmark/benchmark.h>

using namespace maxab;

namespace {

void BM_NormalizerClosure(benchmark::State& state) {
  const i64 M = state.range(0);
  const auto params = params_for(CMOrder{-7, 1}, M);
  for (auto _ : state) benchmark::DoNotOptimize(build_normalizer(params).order());
}
BENCHMARK(BM_NormalizerClosure)->Arg(16)->Arg(49)->Arg(125)->Arg(343)->Unit(benchmark::kMillisecond);

void BM_DerivedSubgroup(benchmark::State& state) {
  const auto G = build_normalizer(params_for(CMOrder{-11, 1}, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(derived_subgroup(G).order());
}
BENCHMARK(BM_DerivedSubgroup)->Arg(8)->Arg(16)->Arg(32)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_DerivedAllPairs(benchmark::State& state) {
  const auto G = build_normalizer(params_for(CMOrder{-11, 1}, state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(derived_subgroup_all_pairs(G).order());
}
BENCHMARK(BM_DerivedAllPairs)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const RationalCurve E{Rational(-140), Rational(-784)};
  const int n = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_max_abelian(E, 7, n).degree);
}
BENCHMARK(BM_Classify)->Arg(1)->Arg(4)->Arg(16);

void BM_CertifyStep(benchmark::State& state) {
  const auto& c = find_case("ramified-p7-disc-7-full");
  for (auto _ : state) benchmark::DoNotOptimize(certify_step(c, 1).kind);
}
BENCHMARK(BM_CertifyStep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
