#include "forge/small_cancellation.hpp"

#include <algorithm>
#include <unordered_map>

#include "forge/errors.hpp"
#include "forge/suffix_array.hpp"

namespace forge {

  SymmetrizedSet::SymmetrizedSet(RelatorSet relators)
      : relators_(std::move(relators)) {
    std::unordered_map<Word, std::size_t> classes;
    class_of_.resize(relators_.size());
    periods_.resize(relators_.size());
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      Word const& r = relators_[i];
      periods_[i] = rotation_period(r.letters());
      Word const key = conjugacy_key(r);
      Word const inverse_key = conjugacy_key(r.inverse());
      if (auto it = classes.find(key); it != classes.end()) {
        class_of_[i] = it->second;
        continue;
      }
      if (auto it = classes.find(inverse_key); it != classes.end()) {
        class_of_[i] = it->second;
        continue;
      }
      classes.emplace(key, i);
      class_of_[i] = i;
      blocks_.push_back(Block{i, periods_[i], size_});
      size_ += 2 * periods_[i];
      max_length_ = std::max(max_length_, r.size());
    }
  }

  SymmetrizedSet::Block const& SymmetrizedSet::block_of(std::size_t element) const {
    if (element >= size_) {
      throw InvalidInput("symmetrized element index out of range");
    }
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), element,
                               [](std::size_t e, Block const& b) { return e < b.first; });
    return *(it - 1);
  }

  Origin SymmetrizedSet::origin(std::size_t element) const {
    Block const& b = block_of(element);
    std::size_t const local = element - b.first;
    return local < b.period ? Origin{b.relator, local, false}
                            : Origin{b.relator, local - b.period, true};
  }

  std::size_t SymmetrizedSet::element_length(std::size_t element) const {
    return relators_[block_of(element).relator].size();
  }

  Letter SymmetrizedSet::letter(std::size_t element, std::size_t k) const {
    Block const& b = block_of(element);
    auto const letters = relators_[b.relator].letters();
    std::size_t const n = letters.size();
    std::size_t const local = element - b.first;
    if (local < b.period) {
      return letters[(local + k) % n];
    }
    return -letters[n - 1 - (local - b.period + k) % n];
  }

  Word SymmetrizedSet::element_prefix(std::size_t element, std::size_t len) const {
    Block const& b = block_of(element);
    Word const& r = relators_[b.relator];
    std::size_t const local = element - b.first;
    Word const e = local < b.period ? r.rotate(local)
                                    : r.inverse().rotate(local - b.period);
    return e.subword(0, len);
  }

  Word SymmetrizedSet::element(std::size_t element) const {
    return element_prefix(element, element_length(element));
  }

  std::vector<Word> SymmetrizedSet::elements() const {
    std::vector<Word> out;
    out.reserve(size_);
    for (std::size_t e = 0; e < size_; ++e) {
      out.push_back(element(e));
    }
    return out;
  }

  std::vector<std::size_t> SymmetrizedSet::representatives() const {
    std::vector<std::size_t> out;
    out.reserve(blocks_.size());
    for (auto const& b : blocks_) {
      out.push_back(b.relator);
    }
    return out;
  }

  std::size_t SymmetrizedSet::period(std::size_t relator) const {
    return periods_.at(relator);
  }

  SymmetrizedSet symmetrize(RelatorSet const& relators) {
    return SymmetrizedSet(relators);
  }

  namespace {

    struct Candidate {
      std::size_t value = 0;
      std::size_t a = 0;
      std::size_t b = 0;
    };

    PieceAnalysis finish(SymmetrizedSet const& s,
                         std::optional<Candidate> best,
                         Rational ratio) {
      PieceAnalysis out;
      out.cprime_ratio = ratio;
      if (best && best->value > 0) {
        out.delta = best->value;
        std::size_t a = best->a;
        std::size_t b = best->b;
        if (a > b) {
          std::swap(a, b);
        }
        out.witness = PieceWitness{s.element_prefix(a, best->value), s.origin(a),
                                   s.origin(b)};
      }
      return out;
    }

    std::int32_t compact(Letter l) {
      return static_cast<std::int32_t>(2 * generator_of(l) + (is_inverted(l) ? 1 : 0));
    }

  }  // namespace

  PieceAnalysis max_piece(SymmetrizedSet const& s) {
    if (s.size() < 2) {
      return {};
    }
    RelatorSet const& rels = s.relators();
    auto const alphabet_symbols = static_cast<std::int32_t>(2 * rels.alphabet().rank());
    std::vector<std::size_t> const reps = s.representatives();

    // Each orientation o of a representative contributes o + o[0, p-1) and a
    // unique separator; the element starts are its first p positions.
    std::vector<std::int32_t> text;
    std::vector<std::int64_t> element_at;
    std::size_t total = 0;
    for (std::size_t r : reps) {
      total += 2 * (rels[r].size() + s.period(r));
    }
    text.reserve(total);
    element_at.reserve(total);
    std::int32_t separator = alphabet_symbols;
    std::size_t first_element = 0;
    for (std::size_t r : reps) {
      std::size_t const p = s.period(r);
      for (bool inverted : {false, true}) {
        Word const o = inverted ? rels[r].inverse() : rels[r];
        auto const letters = o.letters();
        std::size_t const base = first_element + (inverted ? p : 0);
        for (std::size_t k = 0; k < letters.size() + p - 1; ++k) {
          text.push_back(compact(letters[k % letters.size()]));
          element_at.push_back(k < p ? static_cast<std::int64_t>(base + k) : -1);
        }
        text.push_back(separator++);
        element_at.push_back(-1);
      }
      first_element += 2 * p;
    }

    std::vector<std::int32_t> const sa = suffix_array(text, separator);
    std::vector<std::int32_t> const lcp = lcp_array(text, sa);

    // Elements in suffix order with the LCP to their predecessor element.
    std::vector<std::size_t> order;
    std::vector<std::size_t> gap;
    std::vector<std::size_t> lengths;
    order.reserve(s.size());
    std::int32_t running = INT32_MAX;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (i > 0) {
        running = std::min(running, lcp[i]);
      }
      std::int64_t const e = element_at[static_cast<std::size_t>(sa[i])];
      if (e < 0) {
        continue;
      }
      order.push_back(static_cast<std::size_t>(e));
      gap.push_back(order.size() == 1 ? 0 : static_cast<std::size_t>(running));
      lengths.push_back(s.element_length(static_cast<std::size_t>(e)));
      running = INT32_MAX;
    }

    std::vector<std::size_t> thresholds = lengths;
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::optional<Candidate> best;
    Rational ratio{0};
    for (std::size_t t : thresholds) {
      std::optional<std::size_t> prev;
      std::size_t h = SIZE_MAX;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0) {
          h = std::min(h, gap[i]);
        }
        if (lengths[i] < t) {
          continue;
        }
        if (prev) {
          std::size_t const shorter = std::min(lengths[*prev], lengths[i]);
          std::size_t const value = std::min(h, shorter);
          if (!best || value > best->value) {
            best = Candidate{value, order[*prev], order[i]};
          }
          Rational const q(static_cast<std::int64_t>(value),
                           static_cast<std::int64_t>(shorter));
          if (q > ratio) {
            ratio = q;
          }
        }
        prev = i;
        h = SIZE_MAX;
      }
    }
    return finish(s, best, ratio);
  }

  PieceAnalysis max_piece_reference(SymmetrizedSet const& s) {
    if (s.size() < 2) {
      return {};
    }
    std::vector<std::vector<std::size_t>> by_first(2 * s.relators().alphabet().rank());
    for (std::size_t e = 0; e < s.size(); ++e) {
      by_first[static_cast<std::size_t>(compact(s.letter(e, 0)))].push_back(e);
    }
    // Materialize one orientation per element lazily through the relator.
    std::optional<Candidate> best;
    Rational ratio{0};
    auto const& rels = s.relators();
    for (auto const& bucket : by_first) {
      for (std::size_t i = 0; i < bucket.size(); ++i) {
        Origin const oa = s.origin(bucket[i]);
        auto const ra = rels[oa.relator].letters();
        for (std::size_t j = i + 1; j < bucket.size(); ++j) {
          Origin const ob = s.origin(bucket[j]);
          auto const rb = rels[ob.relator].letters();
          std::size_t const shorter = std::min(ra.size(), rb.size());
          auto at = [](std::span<Letter const> r, Origin const& o, std::size_t k) {
            std::size_t const n = r.size();
            return o.inverted ? -r[n - 1 - (o.rotation + k) % n] : r[(o.rotation + k) % n];
          };
          std::size_t k = 0;
          while (k < shorter && at(ra, oa, k) == at(rb, ob, k)) {
            ++k;
          }
          if (!best || k > best->value) {
            best = Candidate{k, bucket[i], bucket[j]};
          }
          Rational const q(static_cast<std::int64_t>(k), static_cast<std::int64_t>(shorter));
          if (q > ratio) {
            ratio = q;
          }
        }
      }
    }
    return finish(s, best, ratio);
  }

  SCReport sc_report(RelatorSet const& relators, Rational lambda0, Rational epsilon0) {
    if (relators.empty()) {
      throw DomainError("small-cancellation report of an empty relator set");
    }
    if (lambda0 <= 0 || lambda0 >= 1 || epsilon0 <= 0 || epsilon0 >= 1) {
      throw InvalidInput("lambda0 and epsilon0 must lie in (0, 1)");
    }
    SymmetrizedSet const s(relators);
    PieceAnalysis const pieces = max_piece(s);

    SCReport report;
    report.delta = pieces.delta;
    report.t = SIZE_MAX;
    for (auto const& r : relators.relators()) {
      report.t = std::min(report.t, r.size());
    }
    auto const delta = static_cast<std::int64_t>(report.delta);
    auto const t = static_cast<std::int64_t>(report.t);
    report.lambda = Rational(delta, t);
    report.epsilon = Rational(1, t);
    report.cprime_sixth = 6 * delta < t;
    report.lambda0 = lambda0;
    report.epsilon0 = epsilon0;
    report.strengthened = Rational(delta) <= lambda0 * t && epsilon0 * t >= 1;
    report.cprime_ratio = pieces.cprime_ratio;
    report.witness = pieces.witness;
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (s.period(i) < relators[i].size()) {
        report.proper_powers.push_back(i);
      }
      if (s.representative_of(i) != i) {
        report.conjugate_pairs.emplace_back(s.representative_of(i), i);
      }
    }
    report.tight = report.proper_powers.empty() && report.conjugate_pairs.empty();
    return report;
  }

  SCReport joint_report(std::span<RelatorSet const> stages, Rational lambda0, Rational epsilon0) {
    if (stages.empty()) {
      throw DomainError("joint report of no stages");
    }
    RelatorSet all(stages.front().alphabet(), {});
    std::vector<std::size_t> stage_of;
    for (std::size_t k = 0; k < stages.size(); ++k) {
      if (!(stages[k].alphabet() == all.alphabet())) {
        throw InvalidInput("stage " + std::to_string(k) + " uses a different alphabet");
      }
      all = all.merged(stages[k].relators());
      stage_of.resize(all.size(), k);
    }
    SCReport report = sc_report(all, lambda0, epsilon0);
    if (report.witness) {
      report.witness_stages = {stage_of[report.witness->first.relator],
                               stage_of[report.witness->second.relator]};
    }
    return report;
  }

}  // namespace forge
