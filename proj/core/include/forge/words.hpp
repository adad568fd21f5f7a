#pragma once

// Free-group words and the exact geometry of the Cayley tree.
//
// A letter is a signed, one-based generator index: +(g+1) stands for the
// generator g and -(g+1) for its inverse. Words are always stored freely
// reduced; Word::reduce and the parser are the only entry points that accept
// unreduced input.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

  using Letter = std::int32_t;

  constexpr Letter make_letter(std::size_t generator, bool inverted = false) {
    auto const l = static_cast<Letter>(generator + 1);
    return inverted ? -l : l;
  }

  constexpr std::size_t generator_of(Letter l) {
    return static_cast<std::size_t>(l < 0 ? -l : l) - 1;
  }

  constexpr bool is_inverted(Letter l) {
    return l < 0;
  }

  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    // a, b, ..., z, then g26, g27, ...
    static Alphabet standard(std::size_t rank);

    [[nodiscard]] std::size_t rank() const noexcept {
      return names_.size();
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return names_;
    }
    [[nodiscard]] std::string const& name(std::size_t generator) const;
    [[nodiscard]] std::optional<std::size_t> index_of(
        std::string_view name) const;

    bool operator==(Alphabet const&) const = default;

   private:
    std::vector<std::string> names_;
  };

  class Word {
   public:
    Word() = default;

    // Free reduction of an arbitrary letter sequence; throws InvalidInput on
    // a zero letter.
    static Word reduce(std::span<Letter const> raw);
    static Word reduce(std::initializer_list<Letter> raw) {
      return reduce(std::span<Letter const>(raw.begin(), raw.size()));
    }
    static Word generator(std::size_t g, bool inverted = false) {
      return Word(std::vector<Letter>{make_letter(g, inverted)});
    }

    [[nodiscard]] std::span<Letter const> letters() const noexcept {
      return letters_;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return letters_.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return letters_.empty();
    }
    Letter operator[](std::size_t i) const {
      return letters_[i];
    }
    [[nodiscard]] Letter front() const {
      return letters_.front();
    }
    [[nodiscard]] Letter back() const {
      return letters_.back();
    }

    [[nodiscard]] Word inverse() const;
    [[nodiscard]] Word pow(std::int64_t exponent) const;
    // Any factor of a reduced word is reduced.
    [[nodiscard]] Word subword(std::size_t pos, std::size_t len) const;
    // Cyclic rotation by k letters; the word should be cyclically reduced for
    // the result to stay a rotation.
    [[nodiscard]] Word rotate(std::size_t k) const;
    [[nodiscard]] bool is_cyclically_reduced() const noexcept;

    friend Word operator*(Word const& lhs, Word const& rhs);
    Word& operator*=(Word const& rhs);

    bool operator==(Word const&) const = default;
    // Lexicographic on the letter encoding; use ShortLex for enumeration
    // order.
    auto operator<=>(Word const&) const = default;

    [[nodiscard]] std::size_t hash() const noexcept;

   private:
    explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
    std::vector<Letter> letters_;
  };

  struct ShortLex {
    bool operator()(Word const& lhs, Word const& rhs) const;
  };

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept {
      return w.hash();
    }
  };

  // Reduction with generator range checking against an alphabet.
  Word reduce(Alphabet const& alphabet, std::span<Letter const> raw);
  void check_alphabet(Alphabet const& alphabet, Word const& w);

  Word commutator(Word const& u, Word const& v);

  // Text syntax: a lowercase letter is a generator (looked up by name), the
  // uppercase letter its inverse, an optional decimal exponent follows a
  // factor, "[g7]" / "[G7]" address generator 7 by index, "(...)" groups,
  // whitespace is ignored and "1" alone is the empty word.
  Word parse_word(std::string_view text, Alphabet const& alphabet);
  std::string to_string(Word const& w, Alphabet const& alphabet);

  struct CyclicWord {
    Word word;
    // original = conjugator * word * conjugator^-1
    Word conjugator;

    bool operator==(CyclicWord const&) const = default;
  };

  CyclicWord cyclic_reduce(Word const& w);

  struct PrimitiveRoot {
    CyclicWord root;
    std::size_t exponent = 1;

    [[nodiscard]] bool proper_power() const noexcept {
      return exponent > 1;
    }
  };

  // Throws DomainError on the empty word.
  PrimitiveRoot primitive_root(Word const& w);

  // Smallest rotation period of a cyclically reduced word.
  std::size_t rotation_period(std::span<Letter const> cyclic);

  // Index of the lexicographically least rotation (Booth).
  std::size_t least_rotation(std::span<Letter const> cyclic);

  // Canonical representative of a conjugacy class: least rotation of the
  // cyclic reduction.
  Word conjugacy_key(Word const& w);
  bool are_conjugate(Word const& u, Word const& v);

  std::size_t common_prefix_length(std::span<Letter const> u,
                                   std::span<Letter const> v) noexcept;

  struct TreeGeometry {
    std::size_t distance = 0;
    std::size_t gromov_product = 0;
  };

  // d(u, v) and <u, v>_basepoint in the Cayley tree of the free group.
  TreeGeometry tree_geometry(Word const& u,
                             Word const& v,
                             Word const& basepoint = Word());

  struct TranslationLength {
    std::size_t norm = 0;
    std::size_t stable_norm = 0;
  };

  // In a tree both lengths equal the cyclically reduced length.
  TranslationLength translation_length(Word const& w);

  // d(g x, x) for the vertex x.
  std::size_t displacement(Word const& g, Word const& x);

  struct EnergyReport {
    std::size_t linf = 0;
    std::size_t l1 = 0;
    Word minimizer;
    Word l1_minimizer;
  };

  inline constexpr std::size_t default_energy_vertex_budget = 4'000'000;

  // Exact l-infinity and l1 energies of a finite set of free-group elements
  // acting on the Cayley tree of F(rank). A minimizer lies in the ball of
  // radius max |g| around the identity: every axis meets that ball, and
  // displacements do not increase when a vertex outside it steps towards the
  // identity.
  EnergyReport energy(std::span<Word const> elements,
                      std::size_t rank,
                      std::size_t vertex_budget
                      = default_energy_vertex_budget);

  // All reduced words of length <= radius in shortlex order (letters ordered
  // a, A, b, B, ...).
  std::vector<Word> ball(std::size_t rank, std::size_t radius);

  // Number of reduced words of length <= radius, saturating at SIZE_MAX.
  std::size_t ball_size(std::size_t rank, std::size_t radius);

  std::vector<std::int64_t> exponent_sums(Word const& w, std::size_t rank);

}  // namespace forge

template <>
struct std::hash<forge::Word> {
  std::size_t operator()(forge::Word const& w) const noexcept {
    return w.hash();
  }
};
