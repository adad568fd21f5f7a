#pragma once

// Finite groups given by multiplication tables, used as model-checking
// targets.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forge/words.hpp"

namespace forge {

  class FiniteGroup {
   public:
    // Row i lists the products i*j. Element 0 must be the identity; the
    // constructor verifies closure, identity, inverses and associativity and
    // throws InvalidInput otherwise.
    explicit FiniteGroup(std::vector<std::vector<std::size_t>> table);

    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup symmetric3();
    static FiniteGroup direct_product(FiniteGroup const& a, FiniteGroup const& b);

    [[nodiscard]] std::size_t order() const noexcept {
      return table_.size();
    }
    [[nodiscard]] std::size_t multiply(std::size_t a, std::size_t b) const {
      return table_[a][b];
    }
    [[nodiscard]] std::size_t inverse(std::size_t a) const {
      return inverse_[a];
    }
    [[nodiscard]] std::vector<std::vector<std::size_t>> const& table() const noexcept {
      return table_;
    }

    // Evaluates w with generator g sent to values[g].
    [[nodiscard]] std::size_t evaluate(Word const& w, std::span<std::size_t const> values) const;

   private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
  };

  // First line the order n, then n rows of n space-separated indices.
  FiniteGroup parse_finite_group(std::string_view text);
  FiniteGroup load_finite_group(std::string const& path);
  std::string format_finite_group(FiniteGroup const& g);

  // Every group of order at most 6 up to isomorphism: 1, Z2, Z3, Z4, Z2xZ2,
  // Z5, Z6, S3.
  std::vector<std::pair<std::string, FiniteGroup>> small_group_battery();

}  // namespace forge
