#pragma once

// Symmetrized relator sets, piece statistics and small-cancellation
// verdicts.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "forge/presentation.hpp"
#include "forge/rational.hpp"
#include "forge/words.hpp"

namespace forge {

  struct Origin {
    std::size_t relator = 0;
    std::size_t rotation = 0;
    bool inverted = false;

    auto operator<=>(Origin const&) const = default;
  };

  // All distinct cyclic rotations of every relator and of its inverse,
  // stored implicitly. Relators conjugate to an earlier relator or to its
  // inverse contribute no new elements. Element indices run, per contributing
  // relator in order, over its p rotations followed by the p rotations of its
  // inverse (p the primitive period).
  class SymmetrizedSet {
   public:
    SymmetrizedSet() = default;
    explicit SymmetrizedSet(RelatorSet relators);

    [[nodiscard]] RelatorSet const& relators() const noexcept {
      return relators_;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return size_;
    }
    [[nodiscard]] Origin origin(std::size_t element) const;
    [[nodiscard]] std::size_t element_length(std::size_t element) const;
    [[nodiscard]] Letter letter(std::size_t element, std::size_t k) const;
    [[nodiscard]] Word element(std::size_t element) const;
    [[nodiscard]] Word element_prefix(std::size_t element, std::size_t len) const;
    [[nodiscard]] std::vector<Word> elements() const;

    // Relators that contribute elements, in order.
    [[nodiscard]] std::vector<std::size_t> representatives() const;
    // Index of the relator whose class relator i belongs to.
    [[nodiscard]] std::size_t representative_of(std::size_t relator) const {
      return class_of_[relator];
    }
    [[nodiscard]] std::size_t period(std::size_t relator) const;
    [[nodiscard]] std::size_t max_element_length() const noexcept {
      return max_length_;
    }

   private:
    struct Block {
      std::size_t relator;
      std::size_t period;
      std::size_t first;
    };
    [[nodiscard]] Block const& block_of(std::size_t element) const;

    RelatorSet relators_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> class_of_;
    std::vector<std::size_t> periods_;
    std::size_t size_ = 0;
    std::size_t max_length_ = 0;
  };

  SymmetrizedSet symmetrize(RelatorSet const& relators);

  struct PieceWitness {
    Word piece;
    Origin first;
    Origin second;

    bool operator==(PieceWitness const&) const = default;
  };

  struct PieceAnalysis {
    std::size_t delta = 0;
    std::optional<PieceWitness> witness;
    // Largest piece length relative to the shorter of the two elements
    // carrying it (the per-relator C' ratio).
    Rational cprime_ratio{0};
  };

  // Generalized suffix array over the doubled cyclic words.
  PieceAnalysis max_piece(SymmetrizedSet const& s);

  // Quadratic scan over element pairs sharing a first letter.
  PieceAnalysis max_piece_reference(SymmetrizedSet const& s);

  struct SCReport {
    std::size_t delta = 0;
    std::size_t t = 0;
    Rational lambda{0};
    Rational epsilon{0};
    bool cprime_sixth = false;
    Rational lambda0{1, 6};
    Rational epsilon0{1, 12};
    bool strengthened = false;
    bool tight = false;
    Rational cprime_ratio{0};
    std::optional<PieceWitness> witness;
    // For joint reports: the stage that introduced each witness relator.
    std::vector<std::size_t> witness_stages;
    std::vector<std::size_t> proper_powers;
    std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs;

    bool operator==(SCReport const&) const = default;
  };

  inline Rational const default_lambda0{1, 6};
  inline Rational const default_epsilon0{1, 12};

  // Throws DomainError on an empty relator set and InvalidInput when a
  // target lies outside (0, 1).
  SCReport sc_report(RelatorSet const& relators,
                     Rational lambda0 = default_lambda0,
                     Rational epsilon0 = default_epsilon0);

  // Report of the union of the stages, with the witness attributed to the
  // stages that first contributed its relators.
  SCReport joint_report(std::span<RelatorSet const> stages,
                        Rational lambda0 = default_lambda0,
                        Rational epsilon0 = default_epsilon0);

}  // namespace forge
