#include "forge/dehn.hpp"

#include <algorithm>
#include <climits>

#include "forge/errors.hpp"
#include "forge/parallel.hpp"
#include "forge/suffix_array.hpp"

namespace forge {

  namespace {

    // Direct letter access to one symmetrized element.
    struct ElementView {
      std::span<Letter const> relator;
      std::size_t rotation = 0;
      bool inverted = false;

      [[nodiscard]] std::size_t size() const noexcept {
        return relator.size();
      }
      Letter operator[](std::size_t k) const {
        std::size_t const n = relator.size();
        return inverted ? -relator[n - 1 - (rotation + k) % n] : relator[(rotation + k) % n];
      }
      Letter key(std::size_t k) const {
        return k < size() ? (*this)[k] : INT32_MIN;
      }
    };

  }  // namespace

  struct QuotientHandle::Index {
    RelatorSet relators;
    std::optional<SCReport> report;
    bool sound = true;
    SymmetrizedSet symmetrized;
    std::vector<ElementView> views;
    // Element indices in lexicographic order, shorter first on ties.
    std::vector<std::size_t> sorted;
    RangeMin lengths;

    explicit Index(RelatorSet r) : relators(std::move(r)), symmetrized(relators) {
      if (!relators.empty()) {
        report = sc_report(relators);
        sound = report->cprime_sixth;
      }
      views.reserve(symmetrized.size());
      for (std::size_t e = 0; e < symmetrized.size(); ++e) {
        Origin const o = symmetrized.origin(e);
        views.push_back(ElementView{symmetrized.relators()[o.relator].letters(), o.rotation,
                                    o.inverted});
      }
      sorted.resize(views.size());
      for (std::size_t e = 0; e < sorted.size(); ++e) {
        sorted[e] = e;
      }
      std::sort(sorted.begin(), sorted.end(), [this](std::size_t a, std::size_t b) {
        ElementView const& x = views[a];
        ElementView const& y = views[b];
        std::size_t const n = std::min(x.size(), y.size());
        for (std::size_t k = 0; k < n; ++k) {
          if (x[k] != y[k]) {
            return x[k] < y[k];
          }
        }
        return x.size() != y.size() ? x.size() < y.size() : a < b;
      });
      std::vector<std::int32_t> len(sorted.size());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        len[i] = static_cast<std::int32_t>(views[sorted[i]].size());
      }
      lengths = RangeMin(std::move(len));
    }

    struct Match {
      std::size_t length = 0;
      std::size_t element = 0;
    };

    // Longest prefix of w[i..] that is more than half of some element.
    [[nodiscard]] std::optional<Match> match_at(std::span<Letter const> w, std::size_t i) const {
      std::size_t lo = 0;
      std::size_t hi = sorted.size();
      std::optional<Match> best;
      std::size_t best_lo = 0;
      std::size_t best_hi = 0;
      for (std::size_t d = 1; i + d <= w.size() && lo < hi; ++d) {
        Letter const c = w[i + d - 1];
        auto key = [&](std::size_t s) { return views[s].key(d - 1); };
        auto const first = std::partition_point(sorted.begin() + static_cast<std::ptrdiff_t>(lo),
                                                sorted.begin() + static_cast<std::ptrdiff_t>(hi),
                                                [&](std::size_t s) { return key(s) < c; });
        auto const last = std::partition_point(first, sorted.begin() + static_cast<std::ptrdiff_t>(hi),
                                               [&](std::size_t s) { return key(s) == c; });
        lo = static_cast<std::size_t>(first - sorted.begin());
        hi = static_cast<std::size_t>(last - sorted.begin());
        if (lo < hi && static_cast<std::size_t>(lengths.query(lo, hi)) < 2 * d) {
          best = Match{d, 0};
          best_lo = lo;
          best_hi = hi;
        }
      }
      if (best) {
        std::size_t element = SIZE_MAX;
        for (std::size_t k = best_lo; k < best_hi; ++k) {
          if (views[sorted[k]].size() < 2 * best->length) {
            element = std::min(element, sorted[k]);
          }
        }
        best->element = element;
      }
      return best;
    }
  };

  QuotientHandle::QuotientHandle(RelatorSet relators)
      : index_(std::make_shared<Index const>(std::move(relators))) {}

  QuotientHandle::QuotientHandle(Presentation const& presentation)
      : QuotientHandle(presentation.relator_set()) {}

  Alphabet const& QuotientHandle::alphabet() const noexcept {
    return index_->relators.alphabet();
  }
  RelatorSet const& QuotientHandle::relators() const noexcept {
    return index_->relators;
  }
  std::optional<SCReport> const& QuotientHandle::report() const noexcept {
    return index_->report;
  }
  bool QuotientHandle::sound() const noexcept {
    return index_->sound;
  }
  SymmetrizedSet const& QuotientHandle::symmetrized() const noexcept {
    return index_->symmetrized;
  }

  namespace {

    std::vector<Letter> splice(std::span<Letter const> w,
                               std::size_t pos,
                               std::size_t removed,
                               Word const& inserted) {
      std::vector<Letter> out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
      auto push = [&out](Letter l) {
        if (!out.empty() && out.back() == -l) {
          out.pop_back();
        } else {
          out.push_back(l);
        }
      };
      for (Letter l : inserted.letters()) {
        push(l);
      }
      for (std::size_t k = pos + removed; k < w.size(); ++k) {
        push(w[k]);
      }
      return out;
    }

  }  // namespace

  DehnResult dehn_reduce(Word const& w, QuotientHandle const& q) {
    check_alphabet(q.alphabet(), w);
    auto const& index = q.index();
    DehnResult out;
    std::vector<Letter> current(w.letters().begin(), w.letters().end());
    if (index.views.empty()) {
      out.result = w;
      return out;
    }
    std::size_t const max_len = index.symmetrized.max_element_length();
    std::size_t start = 0;
    while (true) {
      std::optional<QuotientHandle::Index::Match> found;
      std::size_t pos = start;
      for (; pos < current.size(); ++pos) {
        found = index.match_at(current, pos);
        if (found) {
          break;
        }
      }
      if (!found) {
        break;
      }
      ElementView const& e = index.views[found->element];
      std::vector<Letter> u(found->length);
      std::vector<Letter> rest;
      for (std::size_t k = 0; k < e.size(); ++k) {
        (k < found->length ? u[k] : rest.emplace_back()) = e[k];
      }
      Word const inserted = Word::reduce(rest).inverse();
      std::vector<Letter> next = splice(current, pos, found->length, inserted);
      std::size_t const common =
          std::min(pos, common_prefix_length(current, next));
      out.trace.push_back(DehnStep{pos, index.symmetrized.origin(found->element), Word::reduce(u),
                                   inserted});
      current = std::move(next);
      start = common + 1 > max_len ? common + 1 - max_len : 0;
    }
    out.result = Word::reduce(current);
    return out;
  }

  Word replay_trace(Word const& w, std::span<DehnStep const> trace, QuotientHandle const& q) {
    auto const& s = q.symmetrized();
    std::vector<Letter> current(w.letters().begin(), w.letters().end());
    for (std::size_t i = 0; i < trace.size(); ++i) {
      DehnStep const& step = trace[i];
      auto fail = [i](char const* why) {
        throw DomainError("trace step " + std::to_string(i) + ": " + why);
      };
      if (step.origin.relator >= s.relators().size()) {
        fail("unknown relator");
      }
      Word const& r = s.relators()[step.origin.relator];
      Word const oriented = step.origin.inverted ? r.inverse() : r;
      if (!(oriented.rotate(step.origin.rotation) == step.removed * step.inserted.inverse())) {
        fail("replacement is not the named symmetrized element");
      }
      if (2 * step.removed.size() <= r.size()) {
        fail("removed factor is not more than half the relator");
      }
      auto const u = step.removed.letters();
      if (step.position + u.size() > current.size()
          || !std::equal(u.begin(), u.end(), current.begin() + static_cast<std::ptrdiff_t>(step.position))) {
        fail("removed factor does not occur at the recorded position");
      }
      current = splice(current, step.position, u.size(), step.inserted);
    }
    return Word::reduce(current);
  }

  TrivialityVerdict is_trivial(Word const& w, QuotientHandle const& q) {
    DehnResult r = dehn_reduce(w, q);
    TrivialityVerdict v;
    v.sound = q.sound();
    if (r.result.empty()) {
      v.status = Triviality::trivial;
    } else {
      v.status = q.sound() ? Triviality::nontrivial : Triviality::unknown;
    }
    v.trace = std::move(r.trace);
    v.residue = std::move(r.result);
    return v;
  }

  TrivialityVerdict eq_in_quotient(Word const& u, Word const& v, QuotientHandle const& q) {
    return is_trivial(u * v.inverse(), q);
  }

  std::optional<Rational> kernel_length_bound(QuotientHandle const& q) {
    auto const& report = q.report();
    if (!report) {
      return std::nullopt;
    }
    return (Rational(1) - 3 * report->lambda) * static_cast<std::int64_t>(report->t);
  }

  InjectivityReport injectivity_certificate(std::span<Word const> u, QuotientHandle const& q) {
    if (!q.sound()) {
      throw UnsoundPresentation("injectivity certificates need a C'(1/6) presentation");
    }
    std::vector<Word> items(u.begin(), u.end());
    std::sort(items.begin(), items.end(), ShortLex{});
    items.erase(std::unique(items.begin(), items.end()), items.end());
    auto const bound = kernel_length_bound(q);

    std::size_t const n = items.size();
    std::vector<std::vector<std::pair<Word, Word>>> failures(n);
    std::vector<std::size_t> fast(n, 0);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Word const d = items[i] * items[j].inverse();
        if (!bound || Rational(static_cast<std::int64_t>(d.size())) < *bound) {
          ++fast[i];
          continue;
        }
        if (is_trivial(d, q).status == Triviality::trivial) {
          failures[i].emplace_back(items[i], items[j]);
        }
      }
    });

    InjectivityReport report;
    report.pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    for (std::size_t i = 0; i < n; ++i) {
      report.fast_path += fast[i];
      for (auto& f : failures[i]) {
        report.failures.push_back(std::move(f));
      }
    }
    report.certified = report.failures.empty();
    return report;
  }

  char const* to_string(Triviality t) {
    switch (t) {
      case Triviality::trivial: return "trivial";
      case Triviality::nontrivial: return "nontrivial";
      case Triviality::unknown: return "unknown";
    }
    return "?";
  }

}  // namespace forge
