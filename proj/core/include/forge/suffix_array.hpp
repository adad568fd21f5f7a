#pragma once

// Linear-time suffix and LCP arrays over integer texts.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace forge {

  // SA-IS. Symbols must lie in [0, alphabet_size); the text need not carry a
  // sentinel.
  std::vector<std::int32_t> suffix_array(std::span<std::int32_t const> text,
                                         std::int32_t alphabet_size);

  // Kasai: lcp[i] is the longest common prefix of suffixes sa[i-1] and sa[i];
  // lcp[0] = 0.
  std::vector<std::int32_t> lcp_array(std::span<std::int32_t const> text,
                                      std::span<std::int32_t const> sa);

  // Sparse-table range minimum over a fixed array.
  class RangeMin {
   public:
    RangeMin() = default;
    explicit RangeMin(std::vector<std::int32_t> values);

    // Minimum over [lo, hi); requires lo < hi.
    [[nodiscard]] std::int32_t query(std::size_t lo, std::size_t hi) const;
    [[nodiscard]] std::size_t size() const noexcept {
      return levels_.empty() ? 0 : levels_[0].size();
    }

   private:
    std::vector<std::vector<std::int32_t>> levels_;
  };

}  // namespace forge
