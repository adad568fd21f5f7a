#include <benchmark/benchmark.h>

#include <random>

#include "forge/dehn.hpp"

namespace {

  using namespace forge;

  void BM_DehnKernelWord(benchmark::State& state) {
    QuotientHandle const q(parse_presentation("gens: a b c d\nrel: abABcdCD\n"));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> letter(1, 4), sign(0, 1);
    Word x;
    Word const r = q.relators()[0];
    for (std::int64_t k = 0; k < state.range(0); ++k) {
      std::vector<Letter> g;
      for (int i = 0; i < 6; ++i) {
        g.push_back(sign(rng) ? letter(rng) : -letter(rng));
      }
      Word const h = Word::reduce(g);
      x = x * h * (sign(rng) ? r : r.inverse()) * h.inverse();
    }
    for (auto _ : state) {
      benchmark::DoNotOptimize(is_trivial(x, q).status);
    }
    state.counters["length"] = static_cast<double>(x.size());
  }
  BENCHMARK(BM_DehnKernelWord)->RangeMultiplier(4)->Range(4, 1024);

  void BM_InjectivityBall(benchmark::State& state) {
    QuotientHandle const q(parse_presentation("gens: a b\nrel: (a2b2)11\n"));
    auto const u = ball(2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(injectivity_certificate(u, q).certified);
    }
  }
  BENCHMARK(BM_InjectivityBall)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace
