#pragma once

// The absorption and norm-stabilization relator families, with certificates
// and doubling-based parameter tuning.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "forge/errors.hpp"
#include "forge/presentation.hpp"
#include "forge/rational.hpp"
#include "forge/small_cancellation.hpp"
#include "forge/words.hpp"

namespace forge {

  // relator = gamma * x y^p x y^(p+1) ... x y^(p+q)
  struct AbsorptionSpec {
    Word gamma;
    Word x;
    Word y;
    std::size_t p = 1;
    std::size_t q = 1;

    bool operator==(AbsorptionSpec const&) const = default;
  };

  // relator = gamma^-q * prod_i kappa_i gamma1 kappa_i^-1, where
  // ell_alpha(gamma1) <= gamma1_bound.
  struct SclSpec {
    Word gamma;
    Word gamma1;
    Word alpha;
    Rational gamma1_bound{1};
    std::vector<Word> kappas;
    std::size_t q = 1;
    Rational sigma{1};

    [[nodiscard]] std::size_t p() const noexcept {
      return kappas.size();
    }
    // p * L / q
    [[nodiscard]] Rational stable_bound() const;

    bool operator==(SclSpec const&) const = default;
  };

  class InvalidSpec : public InvalidInput {
   public:
    using InvalidInput::InvalidInput;
  };

  class DegenerateSpec : public InvalidSpec {
   public:
    using InvalidSpec::InvalidSpec;
  };

  enum class ConsequenceKind { absorption, stable_norm };

  // In the quotient lhs = rhs. For absorption lhs = gamma and rhs lies in
  // <x, y>; for the stable-norm family lhs = gamma^q and rhs is the product
  // of conjugates of gamma1.
  struct Consequence {
    ConsequenceKind kind = ConsequenceKind::absorption;
    Word lhs;
    Word rhs;
    std::optional<Rational> stable_bound;

    bool operator==(Consequence const&) const = default;
  };

  struct RelatorCertificate {
    Word relator;
    std::variant<AbsorptionSpec, SclSpec> spec;
    SCReport report;
    Consequence consequence;

    [[nodiscard]] ConsequenceKind kind() const noexcept {
      return consequence.kind;
    }
    bool operator==(RelatorCertificate const&) const = default;
  };

  // lhs^-1 rhs is conjugate to the relator or to its inverse, a purely
  // free-group check.
  bool consequence_identity_holds(RelatorCertificate const& c);

  // The report is the joint report of the ambient set and the new relator.
  RelatorCertificate absorption_relator(AbsorptionSpec const& spec,
                                        RelatorSet const& ambient,
                                        Rational lambda0 = default_lambda0,
                                        Rational epsilon0 = default_epsilon0);
  RelatorCertificate scl_relator(SclSpec const& spec,
                                 RelatorSet const& ambient,
                                 Rational lambda0 = default_lambda0,
                                 Rational epsilon0 = default_epsilon0);

  // kappa_i = x y^(m+i) x for i = 1 .. count.
  std::vector<Word> kappa_family(Word const& x, Word const& y, std::size_t count, std::size_t base_length);

  struct TuneStep {
    std::size_t p = 0;
    std::size_t q = 0;
    std::size_t m = 0;
    std::size_t delta = 0;
    std::size_t t = 0;
    Rational lambda{0};
    bool success = false;
  };

  struct TuneOptions {
    Rational lambda0{1, 12};
    Rational epsilon0{1, 50};
    std::size_t max_iterations = 10;
    // Absorption: starting (p, q); p never drops below p_floor, which keeps
    // the y-exponent ranges of successive stages disjoint.
    std::size_t p0 = 3;
    std::size_t q0 = 2;
    std::size_t p_floor = 0;
    // Stable norm: kappa count and starting base exponent m.
    std::size_t scl_p0 = 1;
    std::size_t m0 = 24;
    std::size_t m_offset = 0;
  };

  struct TuneResult {
    RelatorCertificate certificate;
    std::vector<TuneStep> history;
  };

  class TuningFailed : public Error {
   public:
    TuningFailed(std::string const& message,
                 std::optional<SCReport> best,
                 std::vector<TuneStep> history)
        : Error(message), best_(std::move(best)), history_(std::move(history)) {}

    [[nodiscard]] std::optional<SCReport> const& best() const noexcept {
      return best_;
    }
    [[nodiscard]] std::vector<TuneStep> const& history() const noexcept {
      return history_;
    }

   private:
    std::optional<SCReport> best_;
    std::vector<TuneStep> history_;
  };

  // Doubles (p, q) until the joint report with the ambient set satisfies
  // Delta <= lambda0 T and T >= 1/epsilon0.
  TuneResult tune_absorption(Word const& gamma,
                             Word const& x,
                             Word const& y,
                             RelatorSet const& ambient,
                             TuneOptions const& options = {});

  // Stable-norm family of gamma over gamma1 with ell_alpha(gamma1) <= L and
  // p = scl_p0 kappas: q starts at the least value with p L / q < sigma, and
  // q and m double together.
  TuneResult tune_scl(Word const& gamma,
                      Word const& gamma1,
                      Word const& alpha,
                      Rational gamma1_bound,
                      Word const& x,
                      Word const& y,
                      Rational sigma,
                      RelatorSet const& ambient,
                      TuneOptions const& options = {});

}  // namespace forge
