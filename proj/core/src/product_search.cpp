#include "forge/product_search.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "forge/errors.hpp"

namespace forge {

  Word expand(std::span<ClosureFactor const> factors, RelatorSet const& relators) {
    Word out;
    for (auto const& f : factors) {
      if (f.relator >= relators.size()) {
        throw InvalidInput("closure factor names an unknown relator");
      }
      out *= f.conjugator * relators[f.relator].pow(f.exponent) * f.conjugator.inverse();
    }
    return out;
  }

  MembershipOracle::MembershipOracle(RelatorSet relators,
                                     OracleBudget budget,
                                     std::size_t max_word_length)
      : relators_(std::move(relators)), budget_(budget), max_word_length_(max_word_length) {
    if (budget_.max_factors > 0 && !relators_.empty()) {
      std::unordered_set<Word> seen;
      for (Word const& g : ball(relators_.alphabet().rank(), budget_.max_conjugator_length)) {
        for (std::size_t r = 0; r < relators_.size(); ++r) {
          for (int e : {1, -1}) {
            Word f = g * relators_[r].pow(e) * g.inverse();
            if (seen.insert(f).second) {
              factors_.push_back(std::move(f));
              origins_.push_back(ClosureFactor{g, r, e});
            }
          }
        }
      }
    }
    std::size_t max_len = 0;
    for (auto const& f : factors_) {
      max_len = std::max(max_len, f.size());
    }
    std::size_t const cap =
        max_word_length_ + (budget_.max_factors > 2 ? (budget_.max_factors - 2) * max_len : 0);

    auto push = [this](Word const& w, std::int32_t a, std::int32_t b) {
      table_.push_back(Entry{w.hash(), a, b});
    };
    push(Word(), -1, -1);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].size() <= cap) {
        push(factors_[i], static_cast<std::int32_t>(i), -1);
      }
    }
    if (budget_.max_factors >= 2) {
      // Bucket by length, each bucket sorted, so that the partners of f
      // cancelling at least k letters form one contiguous range.
      std::vector<std::vector<std::size_t>> by_length(max_len + 1);
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        by_length[factors_[i].size()].push_back(i);
      }
      for (auto& bucket : by_length) {
        std::sort(bucket.begin(), bucket.end(),
                  [this](std::size_t a, std::size_t b) { return factors_[a] < factors_[b]; });
      }
      for (std::size_t a = 0; a < factors_.size(); ++a) {
        Word const inv = factors_[a].inverse();
        auto const inv_letters = inv.letters();
        for (std::size_t len = 1; len <= max_len; ++len) {
          auto const& bucket = by_length[len];
          if (bucket.empty()) {
            continue;
          }
          std::size_t const total = factors_[a].size() + len;
          std::size_t const k = total > cap ? (total - cap + 1) / 2 : 0;
          if (k > std::min(inv.size(), len)) {
            continue;
          }
          auto prefix = inv_letters.subspan(0, k);
          auto compare = [&](std::size_t idx) {
            auto const l = factors_[idx].letters().subspan(0, k);
            return std::lexicographical_compare_three_way(l.begin(), l.end(), prefix.begin(),
                                                          prefix.end());
          };
          auto lo = std::partition_point(bucket.begin(), bucket.end(),
                                         [&](std::size_t idx) { return compare(idx) < 0; });
          auto hi = std::partition_point(lo, bucket.end(),
                                         [&](std::size_t idx) { return compare(idx) == 0; });
          for (auto it = lo; it != hi; ++it) {
            push(factors_[a] * factors_[*it], static_cast<std::int32_t>(a),
                 static_cast<std::int32_t>(*it));
          }
        }
      }
    }
    auto arity = [](Entry const& e) { return (e.first >= 0) + (e.second >= 0); };
    std::sort(table_.begin(), table_.end(), [&](Entry const& x, Entry const& y) {
      if (x.hash != y.hash) {
        return x.hash < y.hash;
      }
      return arity(x) < arity(y);
    });
  }

  Word MembershipOracle::entry_word(Entry const& e) const {
    Word out;
    if (e.first >= 0) {
      out = factors_[static_cast<std::size_t>(e.first)];
    }
    if (e.second >= 0) {
      out *= factors_[static_cast<std::size_t>(e.second)];
    }
    return out;
  }

  std::optional<MembershipOracle::Entry> MembershipOracle::lookup(Word const& w) const {
    std::uint64_t const h = w.hash();
    auto it = std::lower_bound(table_.begin(), table_.end(), h,
                               [](Entry const& e, std::uint64_t v) { return e.hash < v; });
    for (; it != table_.end() && it->hash == h; ++it) {
      if (entry_word(*it) == w) {
        return *it;
      }
    }
    return std::nullopt;
  }

  OracleResult MembershipOracle::query(Word const& w) const {
    if (w.size() > max_word_length_) {
      throw InvalidInput("oracle query longer than its construction bound");
    }
    check_alphabet(relators_.alphabet(), w);
    auto certificate_of = [this](std::vector<std::size_t> const& left, Entry const& e) {
      OracleResult r{OracleStatus::member, {}};
      for (std::size_t i : left) {
        r.certificate.push_back(origins_[i]);
      }
      for (std::int32_t i : {e.first, e.second}) {
        if (i >= 0) {
          r.certificate.push_back(origins_[static_cast<std::size_t>(i)]);
        }
      }
      return r;
    };
    if (auto e = lookup(w)) {
      return certificate_of({}, *e);
    }
    if (budget_.max_factors <= 2) {
      return {};
    }
    std::vector<std::size_t> left;
    std::optional<OracleResult> found;
    // acc = (f1 ... fk)^-1; each new factor multiplies on the left.
    for (std::size_t depth = 1; depth + 2 <= budget_.max_factors; ++depth) {
      auto search_left = [&](auto&& self, Word const& acc, std::size_t remaining) -> bool {
        if (remaining == 0) {
          if (auto e = lookup(acc * w)) {
            found = certificate_of(left, *e);
            return true;
          }
          return false;
        }
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          left.push_back(i);
          bool const hit = self(self, factors_[i].inverse() * acc, remaining - 1);
          left.pop_back();
          if (hit) {
            return true;
          }
        }
        return false;
      };
      if (search_left(search_left, Word(), depth)) {
        return *found;
      }
    }
    return {};
  }

  OracleResult normal_closure_member_oracle(Word const& w,
                                            RelatorSet const& relators,
                                            OracleBudget budget) {
    return MembershipOracle(relators, budget, w.size()).query(w);
  }

  namespace {

    struct Layered {
      struct Node {
        Word word;
        std::int64_t parent;
        std::size_t factor;
        std::size_t depth;
      };
      std::vector<Node> nodes;
      std::unordered_map<Word, std::size_t> index;
      std::vector<std::size_t> layer_end;

      Layered() {
        nodes.push_back(Node{Word(), -1, 0, 0});
        index.emplace(Word(), 0);
        layer_end.push_back(1);
      }

      template <class OnNew>
      void grow(std::span<Word const> factors, std::size_t max_products, OnNew&& on_new) {
        std::size_t const begin = layer_end.size() >= 2 ? layer_end[layer_end.size() - 2] : 0;
        std::size_t const end = layer_end.back();
        std::size_t const depth = layer_end.size();
        std::size_t added = 0;
        for (std::size_t n = begin; n < end && added < max_products; ++n) {
          for (std::size_t f = 0; f < factors.size() && added < max_products; ++f) {
            Word w = nodes[n].word * factors[f];
            if (index.contains(w)) {
              continue;
            }
            index.emplace(w, nodes.size());
            nodes.push_back(Node{std::move(w), static_cast<std::int64_t>(n), f, depth});
            ++added;
            if (on_new(nodes.size() - 1)) {
              layer_end.push_back(nodes.size());
              return;
            }
          }
        }
        layer_end.push_back(nodes.size());
      }

      [[nodiscard]] std::vector<std::size_t> path(std::size_t n) const {
        std::vector<std::size_t> out;
        for (auto i = static_cast<std::int64_t>(n); nodes[static_cast<std::size_t>(i)].parent >= 0;
             i = nodes[static_cast<std::size_t>(i)].parent) {
          out.push_back(nodes[static_cast<std::size_t>(i)].factor);
        }
        std::reverse(out.begin(), out.end());
        return out;
      }
    };

  }  // namespace

  std::optional<std::vector<std::size_t>> shortest_free_product(Word const& target,
                                                                std::span<Word const> factors,
                                                                std::size_t max_factors,
                                                                std::size_t max_products) {
    Layered layers;
    for (std::size_t k = 0; k <= max_factors; ++k) {
      std::size_t const a = (k + 1) / 2;
      std::size_t const b = k / 2;
      while (layers.layer_end.size() <= a) {
        layers.grow(factors, max_products, [](std::size_t) { return false; });
      }
      std::size_t const b_end = layers.layer_end[b];
      for (std::size_t y = 0; y < b_end; ++y) {
        auto it = layers.index.find(target * layers.nodes[y].word.inverse());
        if (it != layers.index.end() && layers.nodes[it->second].depth <= a) {
          std::vector<std::size_t> out = layers.path(it->second);
          for (std::size_t f : layers.path(y)) {
            out.push_back(f);
          }
          return out;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<std::size_t>> shortest_product(Word const& target,
                                                           std::span<Word const> factors,
                                                           std::size_t max_factors,
                                                           QuotientHandle const& q,
                                                           std::size_t max_products) {
    if (q.relators().empty()) {
      return shortest_free_product(target, factors, max_factors, max_products);
    }
    Word const inv = target.inverse();
    if (is_trivial(target, q).status == Triviality::trivial) {
      return std::vector<std::size_t>{};
    }
    Layered layers;
    std::optional<std::size_t> hit;
    for (std::size_t k = 1; k <= max_factors && !hit; ++k) {
      layers.grow(factors, max_products, [&](std::size_t n) {
        if (is_trivial(inv * layers.nodes[n].word, q).status == Triviality::trivial) {
          hit = n;
          return true;
        }
        return false;
      });
    }
    if (!hit) {
      return std::nullopt;
    }
    return layers.path(*hit);
  }

}  // namespace forge
