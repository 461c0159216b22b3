#include <benchmark/benchmark.h>

#include <random>

#include "qifkit/alpha_measures.h"
#include "qifkit/capacity.h"
#include "qifkit/verify.h"
#include "qifkit/vulnerability.h"

namespace qifkit {
namespace {

struct Instance {
  Prior prior;
  Channel channel;
};

Instance Draw(std::size_t n) {
  std::mt19937_64 rng(n);
  Prior p = RandomPrior(n, rng);
  Channel c = RandomChannel(n, n, rng);
  return {std::move(p), std::move(c)};
}

void BM_Push(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Push(in.prior, in.channel));
}
BENCHMARK(BM_Push)->RangeMultiplier(4)->Range(4, 256);

void BM_BayesCapacity(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BayesCapacity(in.channel));
}
BENCHMARK(BM_BayesCapacity)->RangeMultiplier(4)->Range(4, 256);

void BM_RenyiLdp(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RenyiLdp(in.channel, AlphaOrder::Of(2.0)));
}
BENCHMARK(BM_RenyiLdp)->RangeMultiplier(4)->Range(4, 64);

void BM_ArimotoMi(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  const AlphaOrder a = AlphaOrder::Of(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ArimotoMutualInformation(Push(in.prior, in.channel), a));
  }
}
BENCHMARK(BM_ArimotoMi)->RangeMultiplier(4)->Range(4, 256);

void BM_SibsonMi(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  const AlphaOrder a = AlphaOrder::Of(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SibsonMutualInformation(in.prior, in.channel, a));
  }
}
BENCHMARK(BM_SibsonMi)->RangeMultiplier(4)->Range(4, 256);

void BM_AlphaLeakageGeneralized(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  const FMeanSpec f = FAlpha(AlphaOrder::Of(2.0));
  const GainSpec g = GainSpec::Simplex();
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenMultiplicativeLeakage(in.prior, in.channel, g, f, f));
  }
}
BENCHMARK(BM_AlphaLeakageGeneralized)->RangeMultiplier(4)->Range(4, 64);

void BM_GenericAscentVulnerability(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  const FMeanSpec f = FMeanSpec::Exp(-1.0);
  const GainSpec g = GainSpec::Simplex();
  for (auto _ : state) benchmark::DoNotOptimize(GenPriorVulnerability(in.prior, g, f));
}
BENCHMARK(BM_GenericAscentVulnerability)->DenseRange(2, 4);

void BM_SupOverPriorSibson(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  const AlphaOrder a = AlphaOrder::Of(2.0);
  auto obj = [&](const Prior& p) { return SibsonMutualInformation(p, in.channel, a); };
  for (auto _ : state) benchmark::DoNotOptimize(SupOverPrior(in.channel.num_inputs(), obj, {}));
}
BENCHMARK(BM_SupOverPriorSibson)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_AxiomSuite(benchmark::State& state) {
  const FMeanSpec f = FAlpha(AlphaOrder::Of(2.0));
  const AxiomSuiteConfig cfg(f, f, AxiomGainFamily::kSimplex);
  for (auto _ : state) benchmark::DoNotOptimize(RunAxiomSuite(cfg, state.range(0), 7));
}
BENCHMARK(BM_AxiomSuite)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MaximalEqualsCapacity(benchmark::State& state) {
  const Instance in = Draw(state.range(0));
  const FMeanSpec f = FAlpha(AlphaOrder::Of(2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        VerifyMaximalEqualsCapacity(in.channel, GainSpec::Simplex(), f, f, {}, {}));
  }
}
BENCHMARK(BM_MaximalEqualsCapacity)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qifkit

BENCHMARK_MAIN();
