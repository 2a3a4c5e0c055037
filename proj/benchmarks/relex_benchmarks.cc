#include <benchmark/benchmark.h>

#include <random>

#include "relex/amalgamation.h"
#include "relex/embeddings.h"
#include "relex/finite_class.h"
#include "relex/isomorphism.h"
#include "relex/random_source.h"
#include "relex/samplers.h"

namespace {

relex::Structure random_graph(int n, std::mt19937_64& rng) {
  relex::Structure g(relex::Signature{{"R", 2}}, n);
  std::bernoulli_distribution coin(0.5);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (coin(rng)) {
        g.set(0, {a, b});
        g.set(0, {b, a});
      }
  return g;
}

void BM_CanonicalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto g = random_graph(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(relex::canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(3, 6);

void BM_EnumerateEmbeddings(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto s = random_graph(3, rng);
  const auto t = random_graph(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(relex::enumerate_embeddings(s, t));
}
BENCHMARK(BM_EnumerateEmbeddings)->Arg(6)->Arg(10)->Arg(16);

void BM_CheckNdapGraphs(benchmark::State& state) {
  const auto k = relex::builtin_class("graphs");
  for (auto _ : state) benchmark::DoNotOptimize(relex::check_ndap(k, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CheckNdapGraphs)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_SampleFramewiseGraphs(benchmark::State& state) {
  const auto k = relex::builtin_class("graphs");
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    relex::HierarchicalRandomSource src(seed++, 2);
    benchmark::DoNotOptimize(relex::sample_framewise(k, n, src));
  }
}
BENCHMARK(BM_SampleFramewiseGraphs)->Arg(4)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
