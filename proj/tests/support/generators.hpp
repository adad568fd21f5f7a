#pragma once

// Seeded random instances shared by the unit, property and acceptance
// tests.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "forge/forge.hpp"

namespace forge::testing {

  using Rng = std::mt19937_64;

  inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  inline Letter random_letter(Rng& rng, std::size_t rank) {
    return make_letter(uniform(rng, 0, rank - 1), uniform(rng, 0, 1) == 1);
  }

  // Arbitrary letter sequence, usually not reduced.
  inline std::vector<Letter> random_raw(Rng& rng, std::size_t rank, std::size_t length) {
    std::vector<Letter> raw(length);
    for (auto& l : raw) {
      l = random_letter(rng, rank);
    }
    return raw;
  }

  // Uniform among reduced words of exactly this length.
  inline Word random_reduced(Rng& rng, std::size_t rank, std::size_t length) {
    std::vector<Letter> raw;
    raw.reserve(length);
    while (raw.size() < length) {
      Letter const l = random_letter(rng, rank);
      if (raw.empty() || raw.back() != -l) {
        raw.push_back(l);
      }
    }
    return Word::reduce(raw);
  }

  inline Word random_cyclically_reduced(Rng& rng, std::size_t rank, std::size_t length) {
    for (;;) {
      Word w = random_reduced(rng, rank, length);
      if (w.is_cyclically_reduced()) {
        return w;
      }
    }
  }

  inline Alphabet shuffled(Alphabet const& a, std::vector<std::size_t> const& perm) {
    std::vector<std::string> names(a.rank());
    for (std::size_t g = 0; g < a.rank(); ++g) {
      names[perm[g]] = a.name(g);
    }
    return Alphabet(names);
  }

  inline Word permute_letters(Word const& w, std::vector<std::size_t> const& perm) {
    std::vector<Letter> raw;
    for (Letter l : w.letters()) {
      raw.push_back(make_letter(perm[generator_of(l)], is_inverted(l)));
    }
    return Word::reduce(raw);
  }

  // Relator sets with 1..max_relators cyclically reduced relators of length
  // in [min_length, max_length]; duplicates and conjugates are allowed.
  inline RelatorSet random_relator_set(Rng& rng,
                                       std::size_t rank,
                                       std::size_t max_relators,
                                       std::size_t min_length,
                                       std::size_t max_length) {
    std::size_t const n = uniform(rng, 1, max_relators);
    std::vector<Word> rels;
    while (rels.size() < n) {
      Word w = random_cyclically_reduced(rng, rank, uniform(rng, min_length, max_length));
      if (std::find(rels.begin(), rels.end(), w) == rels.end()) {
        rels.push_back(std::move(w));
      }
    }
    return RelatorSet(Alphabet::standard(rank), std::move(rels));
  }

  // Rejection sampling until the set is C'(1/6).
  inline RelatorSet random_c6(Rng& rng,
                              std::size_t rank,
                              std::size_t max_relators,
                              std::size_t min_length,
                              std::size_t max_length) {
    for (;;) {
      RelatorSet r = random_relator_set(rng, rank, max_relators, min_length, max_length);
      if (sc_report(r).cprime_sixth) {
        return r;
      }
    }
  }

  // A product of `factors` conjugates g r^{+-1} g^-1 with |g| <= conj_length,
  // freely reduced.
  inline Word random_kernel_element(Rng& rng,
                                    RelatorSet const& r,
                                    std::size_t factors,
                                    std::size_t conj_length) {
    Word w;
    std::size_t const rank = r.alphabet().rank();
    for (std::size_t i = 0; i < factors; ++i) {
      Word const g = random_reduced(rng, rank, uniform(rng, 0, conj_length));
      Word const& rel = r[uniform(rng, 0, r.size() - 1)];
      w *= g * rel.pow(uniform(rng, 0, 1) ? 1 : -1) * g.inverse();
    }
    return w;
  }

}  // namespace forge::testing
