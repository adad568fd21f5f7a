#include "forge/suffix_array.hpp"

#include <algorithm>
#include <bit>

#include "forge/errors.hpp"

namespace forge {

  namespace {

    using Index = std::int32_t;

    // Nong, Zhang and Chan. The text s has length n >= 1, s[n-1] is a unique
    // smallest sentinel 0 and all other symbols lie in [1, k).
    void sais(std::vector<Index> const& s, std::vector<Index>& sa, Index k) {
      auto const n = static_cast<Index>(s.size());
      sa.assign(static_cast<std::size_t>(n), -1);
      if (n == 1) {
        sa[0] = 0;
        return;
      }
      std::vector<bool> stype(static_cast<std::size_t>(n), false);
      stype[static_cast<std::size_t>(n - 1)] = true;
      for (Index i = n - 2; i >= 0; --i) {
        auto const u = static_cast<std::size_t>(i);
        stype[u] = s[u] < s[u + 1] || (s[u] == s[u + 1] && stype[u + 1]);
      }
      auto is_lms = [&](Index i) {
        return i > 0 && stype[static_cast<std::size_t>(i)]
               && !stype[static_cast<std::size_t>(i - 1)];
      };

      std::vector<Index> bucket_size(static_cast<std::size_t>(k), 0);
      for (Index c : s) {
        ++bucket_size[static_cast<std::size_t>(c)];
      }
      std::vector<Index> heads(static_cast<std::size_t>(k));
      std::vector<Index> tails(static_cast<std::size_t>(k));
      auto reset_buckets = [&] {
        Index sum = 0;
        for (std::size_t c = 0; c < bucket_size.size(); ++c) {
          heads[c] = sum;
          sum += bucket_size[c];
          tails[c] = sum - 1;
        }
      };

      auto induce = [&] {
        reset_buckets();
        for (Index i = 0; i < n; ++i) {
          Index const j = sa[static_cast<std::size_t>(i)] - 1;
          if (j >= 0 && !stype[static_cast<std::size_t>(j)]) {
            sa[static_cast<std::size_t>(heads[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])]++)] = j;
          }
        }
        reset_buckets();
        for (Index i = n - 1; i >= 0; --i) {
          Index const j = sa[static_cast<std::size_t>(i)] - 1;
          if (j >= 0 && stype[static_cast<std::size_t>(j)]) {
            sa[static_cast<std::size_t>(tails[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])]--)] = j;
          }
        }
      };

      // Stage 1: sort LMS substrings.
      reset_buckets();
      for (Index i = n - 1; i >= 1; --i) {
        if (is_lms(i)) {
          sa[static_cast<std::size_t>(tails[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])]--)] = i;
        }
      }
      induce();

      std::vector<Index> lms_sorted;
      for (Index i = 0; i < n; ++i) {
        if (is_lms(sa[static_cast<std::size_t>(i)])) {
          lms_sorted.push_back(sa[static_cast<std::size_t>(i)]);
        }
      }

      // Name LMS substrings.
      std::vector<Index> name(static_cast<std::size_t>(n), -1);
      Index current = 0;
      Index prev = -1;
      for (Index pos : lms_sorted) {
        bool differ = prev < 0;
        if (!differ) {
          for (Index d = 0;; ++d) {
            auto const a = static_cast<std::size_t>(pos + d);
            auto const b = static_cast<std::size_t>(prev + d);
            if (s[a] != s[b] || stype[a] != stype[b]) {
              differ = true;
              break;
            }
            if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) {
              differ = !(is_lms(pos + d) && is_lms(prev + d));
              break;
            }
          }
        }
        if (differ) {
          ++current;
        }
        name[static_cast<std::size_t>(pos)] = current - 1;
        prev = pos;
      }

      std::vector<Index> lms_positions;
      std::vector<Index> reduced;
      for (Index i = 1; i < n; ++i) {
        if (is_lms(i)) {
          lms_positions.push_back(i);
          reduced.push_back(name[static_cast<std::size_t>(i)]);
        }
      }

      // Stage 2: sort LMS suffixes, recursing when names collide.
      std::vector<Index> reduced_sa;
      if (current < static_cast<Index>(reduced.size())) {
        sais(reduced, reduced_sa, current);
      } else {
        reduced_sa.assign(reduced.size(), 0);
        for (std::size_t i = 0; i < reduced.size(); ++i) {
          reduced_sa[static_cast<std::size_t>(reduced[i])] = static_cast<Index>(i);
        }
      }

      // Stage 3: induce the full order from sorted LMS suffixes.
      std::fill(sa.begin(), sa.end(), -1);
      reset_buckets();
      for (auto it = reduced_sa.rbegin(); it != reduced_sa.rend(); ++it) {
        Index const pos = lms_positions[static_cast<std::size_t>(*it)];
        sa[static_cast<std::size_t>(tails[static_cast<std::size_t>(s[static_cast<std::size_t>(pos)])]--)] = pos;
      }
      induce();
    }

  }  // namespace

  std::vector<std::int32_t> suffix_array(std::span<std::int32_t const> text,
                                         std::int32_t alphabet_size) {
    if (text.empty()) {
      return {};
    }
    if (text.size() >= static_cast<std::size_t>(INT32_MAX)) {
      throw BudgetExceeded("text too long for 32-bit suffix array");
    }
    std::vector<Index> s;
    s.reserve(text.size() + 1);
    for (std::int32_t c : text) {
      if (c < 0 || c >= alphabet_size) {
        throw InvalidInput("suffix array symbol out of range");
      }
      s.push_back(c + 1);
    }
    s.push_back(0);
    std::vector<Index> sa;
    sais(s, sa, alphabet_size + 1);
    sa.erase(sa.begin());
    return sa;
  }

  std::vector<std::int32_t> lcp_array(std::span<std::int32_t const> text,
                                      std::span<std::int32_t const> sa) {
    std::size_t const n = text.size();
    std::vector<std::int32_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
      rank[static_cast<std::size_t>(sa[i])] = static_cast<std::int32_t>(i);
    }
    std::vector<std::int32_t> lcp(n, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto const r = static_cast<std::size_t>(rank[i]);
      if (r == 0) {
        h = 0;
        continue;
      }
      auto const j = static_cast<std::size_t>(sa[r - 1]);
      while (i + h < n && j + h < n && text[i + h] == text[j + h]) {
        ++h;
      }
      lcp[r] = static_cast<std::int32_t>(h);
      if (h > 0) {
        --h;
      }
    }
    return lcp;
  }

  RangeMin::RangeMin(std::vector<std::int32_t> values) {
    if (values.empty()) {
      return;
    }
    std::size_t const n = values.size();
    levels_.push_back(std::move(values));
    for (std::size_t width = 1; 2 * width <= n; width *= 2) {
      auto const& prev = levels_.back();
      std::vector<std::int32_t> next(n - 2 * width + 1);
      for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] = std::min(prev[i], prev[i + width]);
      }
      levels_.push_back(std::move(next));
    }
  }

  std::int32_t RangeMin::query(std::size_t lo, std::size_t hi) const {
    std::size_t const len = hi - lo;
    auto const level = static_cast<std::size_t>(std::bit_width(len) - 1);
    auto const& row = levels_[level];
    return std::min(row[lo], row[hi - (std::size_t{1} << level)]);
  }

}  // namespace forge
