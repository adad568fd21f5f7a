#pragma once

// Finite presentations over a free base group and the validated relator sets
// that small-cancellation analysis works on.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/words.hpp"

namespace forge {

  // Nontrivial, cyclically reduced, duplicate-free relators over an alphabet.
  class RelatorSet {
   public:
    RelatorSet() = default;
    // Throws InvalidInput on a trivial, non-cyclically-reduced, duplicated or
    // out-of-alphabet relator.
    RelatorSet(Alphabet alphabet, std::vector<Word> relators);

    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    [[nodiscard]] std::vector<Word> const& relators() const noexcept {
      return relators_;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return relators_.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return relators_.empty();
    }
    Word const& operator[](std::size_t i) const {
      return relators_[i];
    }

    // Union in order, skipping relators already present.
    [[nodiscard]] RelatorSet merged(std::span<Word const> more) const;

    bool operator==(RelatorSet const&) const = default;

   private:
    Alphabet alphabet_;
    std::vector<Word> relators_;
  };

  // Generators plus arbitrary relator words. Used both as a quotient of the
  // free group and as the source group of a morphism.
  struct Presentation {
    Alphabet alphabet;
    std::vector<Word> relators;

    // Cyclically reduced, deduplicated, trivial relators dropped.
    [[nodiscard]] RelatorSet relator_set() const;

    bool operator==(Presentation const&) const = default;
  };

  // Line format: "gens: a b c", one "rel: <word>" per relator, '#' starts a
  // comment. Blank lines are ignored.
  Presentation parse_presentation(std::string_view text);
  Presentation load_presentation(std::string const& path);
  std::string format_presentation(Presentation const& p);

  // Substitute images[g] for every occurrence of generator g.
  Word substitute(Word const& w, std::span<Word const> images);

}  // namespace forge
