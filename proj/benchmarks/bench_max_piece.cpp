#include <benchmark/benchmark.h>

#include <random>

#include "forge/small_cancellation.hpp"

namespace {

  using namespace forge;

  // One power relator plus ten random relators, total length about n.
  RelatorSet instance(std::size_t n) {
    std::mt19937_64 rng(42);
    Alphabet const a = Alphabet::standard(4);
    Word const base = parse_word("a2b3cd2acB", a);
    std::size_t const random_length = std::max<std::size_t>(n / 1000, 10);
    std::vector<Word> rels{base.pow(static_cast<std::int64_t>((n - 10 * random_length) / base.size()))};
    std::uniform_int_distribution<int> letter(1, 4), sign(0, 1);
    while (rels.size() < 11) {
      std::vector<Letter> raw;
      for (std::size_t k = 0; k < random_length; ++k) {
        raw.push_back(sign(rng) ? letter(rng) : -letter(rng));
      }
      Word const w = cyclic_reduce(Word::reduce(raw)).word;
      if (!w.empty() && !primitive_root(w).proper_power()) {
        rels.push_back(w);
      }
    }
    return RelatorSet(a, rels);
  }

  void BM_MaxPiece(benchmark::State& state) {
    auto const s = symmetrize(instance(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
      benchmark::DoNotOptimize(max_piece(s).delta);
    }
    state.SetComplexityN(state.range(0));
  }
  BENCHMARK(BM_MaxPiece)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond)->Complexity();

  void BM_MaxPieceReference(benchmark::State& state) {
    auto const s = symmetrize(instance(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
      benchmark::DoNotOptimize(max_piece_reference(s).delta);
    }
  }
  BENCHMARK(BM_MaxPieceReference)->Arg(10'000)->Arg(30'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
