#pragma once

// Bounded searches over products of conjugates: the normal-closure
// membership oracle and the shortest-expression search behind norm bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "forge/dehn.hpp"
#include "forge/presentation.hpp"
#include "forge/words.hpp"

namespace forge {

  struct OracleBudget {
    std::size_t max_factors = 3;
    std::size_t max_conjugator_length = 4;
  };

  // conjugator * relator^exponent * conjugator^-1
  struct ClosureFactor {
    Word conjugator;
    std::size_t relator = 0;
    int exponent = 1;

    bool operator==(ClosureFactor const&) const = default;
  };

  Word expand(std::span<ClosureFactor const> factors, RelatorSet const& relators);

  enum class OracleStatus { member, not_found };

  struct OracleResult {
    OracleStatus status = OracleStatus::not_found;
    std::vector<ClosureFactor> certificate;
  };

  // Exhaustive within the budget: w is reported a member iff it is freely
  // equal to a product of at most max_factors conjugates g r^{+-1} g^-1 with
  // |g| <= max_conjugator_length. Products of two conjugates are tabulated
  // once; longer products meet them in the middle.
  class MembershipOracle {
   public:
    MembershipOracle(RelatorSet relators, OracleBudget budget, std::size_t max_word_length);

    // Throws InvalidInput for words longer than the construction bound.
    [[nodiscard]] OracleResult query(Word const& w) const;

    [[nodiscard]] std::size_t factor_count() const noexcept {
      return factors_.size();
    }
    [[nodiscard]] std::size_t table_size() const noexcept {
      return table_.size();
    }

   private:
    struct Entry {
      std::uint64_t hash;
      std::int32_t first;
      std::int32_t second;
    };
    [[nodiscard]] std::optional<Entry> lookup(Word const& w) const;
    [[nodiscard]] Word entry_word(Entry const& e) const;

    RelatorSet relators_;
    OracleBudget budget_;
    std::size_t max_word_length_;
    std::vector<Word> factors_;
    std::vector<ClosureFactor> origins_;
    std::vector<Entry> table_;
  };

  OracleResult normal_closure_member_oracle(Word const& w,
                                            RelatorSet const& relators,
                                            OracleBudget budget = {});

  // Fewest factors (at most max_factors) whose product equals target, as
  // indices into `factors`. In the free group equality is exact and the
  // search meets in the middle; in a quotient each product is compared by
  // Dehn reduction of target^-1 * product, which only ever proves equality.
  // max_products caps every layer.
  std::optional<std::vector<std::size_t>> shortest_free_product(Word const& target,
                                                                std::span<Word const> factors,
                                                                std::size_t max_factors,
                                                                std::size_t max_products = 2'000'000);

  std::optional<std::vector<std::size_t>> shortest_product(Word const& target,
                                                           std::span<Word const> factors,
                                                           std::size_t max_factors,
                                                           QuotientHandle const& q,
                                                           std::size_t max_products = 200'000);

}  // namespace forge
