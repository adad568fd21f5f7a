#pragma once

// Conjugacy-invariant norms: certified upper bounds by bounded search,
// stable bounds from norm-stabilization certificates, and the
// abelianization obstruction.

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "forge/dehn.hpp"
#include "forge/presentation.hpp"
#include "forge/rational.hpp"
#include "forge/relator_forge.hpp"
#include "forge/words.hpp"

namespace forge {

  // Smith form U * M * V = D of the relator exponent matrix M (one row per
  // relator). Word images live in the coordinates x * V: the first
  // diagonal.size() coordinates are taken mod their diagonal entry, the
  // rest are free.
  struct AbelianizationData {
    std::vector<std::vector<mpz_class>> matrix;
    std::vector<std::vector<mpz_class>> row_transform;
    std::vector<std::vector<mpz_class>> column_transform;
    // Nonzero diagonal entries, each dividing the next.
    std::vector<mpz_class> diagonal;
    std::size_t free_rank = 0;

    [[nodiscard]] std::size_t generator_count() const noexcept {
      return column_transform.size();
    }
    // Diagonal entries other than 1.
    [[nodiscard]] std::vector<mpz_class> invariant_factors() const;
    [[nodiscard]] std::vector<mpz_class> image(Word const& w) const;
    [[nodiscard]] bool is_zero(Word const& w) const;
    // Some integer k with image(target) = k * image(generator).
    [[nodiscard]] std::optional<mpz_class> multiple_of(Word const& target, Word const& generator) const;
  };

  AbelianizationData abelianization(Presentation const& p);
  AbelianizationData abelianization(RelatorSet const& r);

  enum class NormKind { ell_alpha, cl, w_length, stable };

  // conjugator * base * conjugator^-1
  struct ExpressionFactor {
    Word conjugator;
    Word base;

    [[nodiscard]] Word value() const;

    bool operator==(ExpressionFactor const&) const = default;
  };

  // element^power equals the product of the expression in the stage
  // quotient (freely, when stage is absent). For ell_alpha, cl and w_length
  // the bound is the factor count with power 1; for stable bounds it is
  // p L / q with power q.
  struct NormCertificate {
    Word element;
    NormKind kind = NormKind::ell_alpha;
    Word parameter;
    Rational bound{0};
    std::vector<ExpressionFactor> expression;
    std::optional<std::size_t> stage;
    std::size_t power = 1;

    [[nodiscard]] Word product() const;

    bool operator==(NormCertificate const&) const = default;
  };

  enum class NormStatus { certified, unknown, infinite };

  struct NormResult {
    NormStatus status = NormStatus::unknown;
    std::optional<NormCertificate> certificate;
  };

  struct NormBudget {
    std::size_t max_factors = 4;
    std::size_t max_conjugator_length = 2;
  };

  // Shortest product of conjugates g alpha^{+-1} g^-1 with |g| bounded.
  // Infinite only through the abelianization.
  NormResult ell_alpha_bound(Word const& gamma,
                             Word const& alpha,
                             QuotientHandle const& q,
                             NormBudget budget = {},
                             std::optional<std::size_t> stage = std::nullopt);

  // Products of commutators [u, v] with |u|, |v| <= max_conjugator_length.
  NormResult cl_bound(Word const& gamma,
                      QuotientHandle const& q,
                      NormBudget budget = {},
                      std::optional<std::size_t> stage = std::nullopt);

  // Products of values w(y_1, ..., y_n)^{+-1} with |y_i| <= max_conjugator_length;
  // silly w gets bound 1 by substituting powers of g.
  NormResult w_length_bound(Word const& g,
                            Word const& w,
                            QuotientHandle const& q,
                            NormBudget budget = {},
                            std::optional<std::size_t> stage = std::nullopt);

  // Throws InvalidInput unless c is a stable-norm certificate whose
  // identity holds.
  NormCertificate stable_bound_from_cert(RelatorCertificate const& c,
                                         std::optional<std::size_t> stage = std::nullopt);

  // Concatenates the expression k times: a certificate for element^(power k)
  // with the same ratio for stable bounds and k times the bound otherwise.
  NormCertificate repeat(NormCertificate const& c, std::size_t k);

  // Conjugates every factor and the element by g.
  NormCertificate conjugate(NormCertificate const& c, Word const& g);

  // Freely equal when q has no relators, Dehn-equal otherwise.
  bool replay(NormCertificate const& c, QuotientHandle const& q);

  char const* to_string(NormKind kind);
  char const* to_string(NormStatus status);

}  // namespace forge
