#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "forge/suffix_array.hpp"

namespace {

  using namespace forge;

  std::vector<std::int32_t> naive_sa(std::vector<std::int32_t> const& t) {
    std::vector<std::int32_t> sa(t.size());
    std::iota(sa.begin(), sa.end(), 0);
    std::sort(sa.begin(), sa.end(), [&](std::int32_t a, std::int32_t b) {
      return std::lexicographical_compare(t.begin() + a, t.end(), t.begin() + b, t.end());
    });
    return sa;
  }

  TEST(SuffixArray, Banana) {
    // b a n a n a
    std::vector<std::int32_t> t{1, 0, 2, 0, 2, 0};
    auto const sa = suffix_array(t, 3);
    EXPECT_EQ(sa, (std::vector<std::int32_t>{5, 3, 1, 0, 4, 2}));
    auto const lcp = lcp_array(t, sa);
    EXPECT_EQ(lcp, (std::vector<std::int32_t>{0, 1, 3, 0, 0, 2}));
  }

  TEST(SuffixArray, MatchesSortOnRandomTexts) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
      std::int32_t const sigma = 1 + static_cast<std::int32_t>(rng() % 5);
      std::vector<std::int32_t> t(rng() % 60);
      for (auto& c : t) {
        c = static_cast<std::int32_t>(rng() % sigma);
      }
      auto const sa = suffix_array(t, sigma);
      ASSERT_EQ(sa, naive_sa(t));
      auto const lcp = lcp_array(t, sa);
      for (std::size_t k = 1; k < sa.size(); ++k) {
        auto const [a, b] = std::mismatch(t.begin() + sa[k - 1], t.end(), t.begin() + sa[k], t.end());
        ASSERT_EQ(lcp[k], a - (t.begin() + sa[k - 1]));
      }
    }
  }

  TEST(RangeMin, AgreesWithScan) {
    std::mt19937_64 rng(8);
    std::vector<std::int32_t> v(200);
    for (auto& x : v) {
      x = static_cast<std::int32_t>(rng() % 1000);
    }
    RangeMin const rm(v);
    EXPECT_EQ(rm.size(), v.size());
    for (int i = 0; i < 2000; ++i) {
      std::size_t lo = rng() % v.size();
      std::size_t hi = lo + 1 + rng() % (v.size() - lo);
      ASSERT_EQ(rm.query(lo, hi), *std::min_element(v.begin() + lo, v.begin() + hi));
    }
  }

}  // namespace
