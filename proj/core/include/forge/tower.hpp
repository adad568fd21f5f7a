#pragma once

// Finite towers of small-cancellation quotients of one free base group,
// with per-stage goals and the witness/poison ledger.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forge/dehn.hpp"
#include "forge/presentation.hpp"
#include "forge/rational.hpp"
#include "forge/relator_forge.hpp"
#include "forge/small_cancellation.hpp"
#include "forge/witness.hpp"
#include "forge/words.hpp"

namespace forge {

  enum class GoalKind { absorb, inject, survive, scl_bound, hom_preserve };
  enum class GoalStatus { pending, certified, failed, heuristic };

  // What a goal check leaves behind. Dehn traces replay against the stage
  // quotient; `certificate` indexes the tower-wide certificate list.
  struct Evidence {
    std::string note;
    std::optional<std::size_t> certificate;
    std::vector<DehnStep> trace;
    std::optional<Rational> bound;

    bool operator==(Evidence const&) const = default;
  };

  struct Goal {
    GoalKind kind = GoalKind::survive;
    GoalStatus status = GoalStatus::pending;
    // absorb: target into <words[0], words[1]>; inject / survive: words;
    // scl_bound: target, alpha, sigma; hom_preserve: witness_id.
    Word target;
    Word alpha;
    std::vector<Word> words;
    Rational sigma{0};
    std::string witness_id;
    Evidence evidence;

    static Goal absorb(Word gamma, Word x, Word y);
    static Goal inject(std::vector<Word> u);
    static Goal survive(std::vector<Word> words);
    static Goal scl_bound(Word gamma, Word alpha, Rational sigma);
    static Goal hom_preserve(std::string witness_id);

    bool operator==(Goal const&) const = default;
  };

  struct Stage {
    std::size_t index = 0;
    RelatorSet new_relators;
    RelatorSet cumulative;
    // Joint report of the cumulative set; absent while it is empty.
    std::optional<SCReport> report;
    std::vector<Goal> goals;
    std::vector<RelatorCertificate> certificates;
    // Absent for the base stage.
    std::optional<std::size_t> injectivity_radius_lb;
    bool heuristic = false;

    [[nodiscard]] QuotientHandle const& quotient() const;

    bool operator==(Stage const& other) const;

   private:
    friend class Tower;
    std::shared_ptr<QuotientHandle const> handle_;
  };

  struct Morphism {
    Presentation source;
    std::vector<Word> images;
    std::size_t target = 0;

    bool operator==(Morphism const&) const = default;
  };

  enum class Decision { positive, negative };

  struct LedgerEntry {
    std::string id;
    RealizedWitness witness;
    Decision decision = Decision::positive;
    std::optional<Morphism> poison;
    std::size_t stage = 0;
    std::optional<std::string> sentence;

    bool operator==(LedgerEntry const&) const = default;
  };

  struct Ledger {
    std::vector<LedgerEntry> positive;
    std::vector<LedgerEntry> negative;
    std::vector<std::string> satisfied_sentences;

    [[nodiscard]] LedgerEntry const* find(std::string const& id) const;
    [[nodiscard]] std::size_t size() const noexcept {
      return positive.size() + negative.size();
    }

    bool operator==(Ledger const&) const = default;
  };

  struct CheckHomResult {
    std::optional<Morphism> morphism;
    // Source relators whose images are not Dehn-trivial, with the verdicts.
    std::vector<std::size_t> failing_relators;
    std::vector<TrivialityVerdict> verdicts;

    [[nodiscard]] bool ok() const noexcept {
      return morphism.has_value();
    }
  };

  class Tower {
   public:
    // rank 4 names the generators s t x y, other ranks use a, b, c, ...
    // Throws InvalidInput for rank < 2.
    static Tower create(std::size_t rank);
    static Tower create(Alphabet alphabet);
    // Rebuilds cached quotients; used by deserialization.
    static Tower from_parts(Alphabet alphabet, std::vector<Stage> stages, Ledger ledger);

    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }
    [[nodiscard]] std::vector<Stage> const& stages() const noexcept {
      return stages_;
    }
    [[nodiscard]] Stage const& stage(std::size_t k) const;
    [[nodiscard]] Stage const& top() const {
      return stages_.back();
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return stages_.size();
    }
    [[nodiscard]] Ledger const& ledger() const noexcept {
      return ledger_;
    }

    // Appends a stage with the certified relators plus any plain relators,
    // then runs every goal and re-certifies every poison. Failed goals are
    // recorded, never thrown.
    [[nodiscard]] Tower push_stage(std::span<RelatorCertificate const> certificates,
                                   std::vector<Goal> goals,
                                   std::span<Word const> plain_relators = {}) const;

    [[nodiscard]] TrivialityVerdict eval(Word const& w, std::size_t k) const;

    [[nodiscard]] CheckHomResult check_hom(Presentation const& source,
                                           std::span<Word const> images,
                                           std::size_t k) const;

    // A negative decision needs a poison at the top stage: a morphism of the
    // witness group extending iota whose V-images are all certified
    // nontrivial. Throws InvalidInput otherwise.
    [[nodiscard]] Tower ledger_update(RealizedWitness const& witness,
                                      Decision decision,
                                      std::optional<Morphism> poison = std::nullopt,
                                      std::optional<std::string> sentence = std::nullopt) const;

    // Every certificate of stages 0..k in push order.
    [[nodiscard]] std::vector<RelatorCertificate> certificates_through(std::size_t k) const;

    bool operator==(Tower const& other) const {
      return alphabet_ == other.alphabet_ && stages_ == other.stages_ && ledger_ == other.ledger_;
    }

   private:
    Tower() = default;
    [[nodiscard]] Goal check_goal(Goal goal, std::size_t k) const;

    Alphabet alphabet_;
    std::vector<Stage> stages_;
    Ledger ledger_;
  };

  char const* to_string(GoalKind kind);
  char const* to_string(GoalStatus status);

}  // namespace forge
