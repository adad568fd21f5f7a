#pragma once

// Word problem in small-cancellation quotients: Dehn's algorithm, equality,
// and length-bound injectivity certificates.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "forge/presentation.hpp"
#include "forge/small_cancellation.hpp"
#include "forge/words.hpp"

namespace forge {

  // An immutable, shareable quotient F(S)/<<R>>. The free group (no
  // relators) counts as sound.
  class QuotientHandle {
   public:
    explicit QuotientHandle(RelatorSet relators);
    explicit QuotientHandle(Presentation const& presentation);

    [[nodiscard]] Alphabet const& alphabet() const noexcept;
    [[nodiscard]] RelatorSet const& relators() const noexcept;
    [[nodiscard]] std::optional<SCReport> const& report() const noexcept;
    [[nodiscard]] bool sound() const noexcept;
    [[nodiscard]] SymmetrizedSet const& symmetrized() const noexcept;

    struct Index;
    [[nodiscard]] Index const& index() const noexcept {
      return *index_;
    }

   private:
    std::shared_ptr<Index const> index_;
  };

  // One replacement: the factor `removed` at `position` is a prefix of the
  // symmetrized element removed * inserted^-1 named by `origin`.
  struct DehnStep {
    std::size_t position = 0;
    Origin origin;
    Word removed;
    Word inserted;

    bool operator==(DehnStep const&) const = default;
  };

  struct DehnResult {
    Word result;
    std::vector<DehnStep> trace;
  };

  // Leftmost-longest replacement of more than half a symmetrized element;
  // ties go to the smallest element index.
  DehnResult dehn_reduce(Word const& w, QuotientHandle const& q);

  // Applies a recorded trace, checking every step against the symmetrized
  // set. Throws DomainError on a step that does not apply.
  Word replay_trace(Word const& w,
                    std::span<DehnStep const> trace,
                    QuotientHandle const& q);

  enum class Triviality { trivial, nontrivial, unknown };

  char const* to_string(Triviality t);

  struct TrivialityVerdict {
    Triviality status = Triviality::unknown;
    std::vector<DehnStep> trace;
    bool sound = false;
    Word residue;
  };

  TrivialityVerdict is_trivial(Word const& w, QuotientHandle const& q);
  TrivialityVerdict eq_in_quotient(Word const& u, Word const& v, QuotientHandle const& q);

  // Every nontrivial kernel element is longer than this (infinite in the
  // free group).
  std::optional<Rational> kernel_length_bound(QuotientHandle const& q);

  struct InjectivityReport {
    bool certified = true;
    std::vector<std::pair<Word, Word>> failures;
    std::size_t pairs = 0;
    std::size_t fast_path = 0;
  };

  // Throws UnsoundPresentation when q is not C'(1/6).
  InjectivityReport injectivity_certificate(std::span<Word const> u, QuotientHandle const& q);

}  // namespace forge
