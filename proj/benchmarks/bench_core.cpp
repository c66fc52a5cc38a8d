#include <benchmark/benchmark.h>

#include "mlwb/constant_domain.hpp"
#include "mlwb/dense.hpp"
#include "mlwb/entangle.hpp"
#include "mlwb/horn.hpp"
#include "mlwb/kripke.hpp"

using namespace mlwb;

namespace {

KripkeFrame random_frame(int n, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    names.push_back("w" + std::to_string(a));
    for (int b = 0; b < n; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  }
  return KripkeFrame(names, edges);
}

void BM_GammaCloseTransitive(benchmark::State& state) {
  const auto f = random_frame(static_cast<int>(state.range(0)), 0.1, 1);
  const HornTheory g{{*axiom_to_horn(2)}};
  for (auto _ : state) benchmark::DoNotOptimize(gamma_close(f, g));
}
BENCHMARK(BM_GammaCloseTransitive)->Arg(8)->Arg(32)->Arg(128);

void BM_GammaCloseSymmetricTransitive(benchmark::State& state) {
  const auto f = random_frame(static_cast<int>(state.range(0)), 0.1, 2);
  const auto g = HornTheory::parse("x R y => y R x\nx R z & z R y => x R y\n");
  for (auto _ : state) benchmark::DoNotOptimize(gamma_close(f, g));
}
BENCHMARK(BM_GammaCloseSymmetricTransitive)->Arg(8)->Arg(32);

void BM_BruteValidity(benchmark::State& state) {
  const auto f = random_frame(static_cast<int>(state.range(0)), 0.4, 3);
  const Formula a = parse_prop("box p & box q -> box box (p | q)");
  for (auto _ : state) benchmark::DoNotOptimize(brute_validity(f, a));
}
BENCHMARK(BM_BruteValidity)->DenseRange(2, 6, 2);

void BM_UkMembers(benchmark::State& state) {
  DenseBounds b;
  b.depth = 5;
  const DenseFrame d(KripkeFrame({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 1}}, 0), b);
  for (auto _ : state) benchmark::DoNotOptimize(uk_members(StopWord(), 2, d, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_UkMembers)->Arg(2)->Arg(4)->Arg(6);

void BM_Canonicalize(benchmark::State& state) {
  const auto f = KripkeFrame::from_names({"a", "b"}, {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}}, "a");
  const auto words = entangle_enumerate(f, DomainAlphabet::standard(2), static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(canonicalize(w));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * words.size()));
}
BENCHMARK(BM_Canonicalize)->Arg(4)->Arg(6);

void BM_CounterexampleG(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(counterexample_g(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CounterexampleG)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
