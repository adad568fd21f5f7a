#include "forge/norms.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "forge/errors.hpp"
#include "forge/product_search.hpp"
#include "forge/witness.hpp"

namespace forge {

  namespace {

    using Matrix = std::vector<std::vector<mpz_class>>;

    Matrix identity(std::size_t n) {
      Matrix m(n, std::vector<mpz_class>(n, 0));
      for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
      }
      return m;
    }

    void add_row(Matrix& m, std::size_t dst, std::size_t src, mpz_class const& f) {
      for (std::size_t j = 0; j < m[dst].size(); ++j) {
        m[dst][j] += f * m[src][j];
      }
    }

    void add_col(Matrix& m, std::size_t dst, std::size_t src, mpz_class const& f) {
      for (auto& row : m) {
        row[dst] += f * row[src];
      }
    }

    void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
      for (auto& row : m) {
        std::swap(row[a], row[b]);
      }
    }

    AbelianizationData smith(Matrix m, std::size_t n) {
      AbelianizationData out;
      out.matrix = m;
      std::size_t const r = m.size();
      Matrix u = identity(r);
      Matrix v = identity(n);
      std::size_t t = 0;
      while (t < r && t < n) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        std::optional<std::pair<std::size_t, std::size_t>> pivot;
        for (std::size_t i = t; i < r; ++i) {
          for (std::size_t j = t; j < n; ++j) {
            if (m[i][j] != 0
                && (!pivot || abs(m[i][j]) < abs(m[pivot->first][pivot->second]))) {
              pivot = {i, j};
            }
          }
        }
        if (!pivot) {
          break;
        }
        std::swap(m[t], m[pivot->first]);
        std::swap(u[t], u[pivot->first]);
        swap_cols(m, t, pivot->second);
        swap_cols(v, t, pivot->second);

        bool dirty = false;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (m[i][t] != 0) {
            mpz_class const q = m[i][t] / m[t][t];
            add_row(m, i, t, -q);
            add_row(u, i, t, -q);
            dirty = dirty || m[i][t] != 0;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (m[t][j] != 0) {
            mpz_class const q = m[t][j] / m[t][t];
            add_col(m, j, t, -q);
            add_col(v, j, t, -q);
            dirty = dirty || m[t][j] != 0;
          }
        }
        if (dirty) {
          continue;
        }
        // Divisibility: fold an offending row into row t and retry.
        for (std::size_t i = t + 1; i < r && !dirty; ++i) {
          for (std::size_t j = t + 1; j < n; ++j) {
            if (m[i][j] % m[t][t] != 0) {
              add_row(m, t, i, 1);
              add_row(u, t, i, 1);
              dirty = true;
              break;
            }
          }
        }
        if (dirty) {
          continue;
        }
        if (m[t][t] < 0) {
          for (auto& x : m[t]) {
            x = -x;
          }
          for (auto& x : u[t]) {
            x = -x;
          }
        }
        out.diagonal.push_back(m[t][t]);
        ++t;
      }
      out.row_transform = std::move(u);
      out.column_transform = std::move(v);
      out.free_rank = n - out.diagonal.size();
      return out;
    }

    mpz_class mod(mpz_class const& a, mpz_class const& m) {
      mpz_class r = a % m;
      if (r < 0) {
        r += m;
      }
      return r;
    }

    // x = r mod m, combined with x = r2 mod m2; false when inconsistent.
    bool crt(mpz_class& r, mpz_class& m, mpz_class r2, mpz_class const& m2) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), m2.get_mpz_t());
      if ((r2 - r) % g != 0) {
        return false;
      }
      mpz_class const m2g = m2 / g;
      mpz_class inv;
      mpz_class const mg = mod(m / g, m2g);
      if (m2g == 1) {
        inv = 0;
      } else {
        mpz_invert(inv.get_mpz_t(), mg.get_mpz_t(), m2g.get_mpz_t());
      }
      mpz_class const k = mod(((r2 - r) / g) * inv, m2g);
      r = r + m * k;
      m = m * m2g;
      r = mod(r, m);
      return true;
    }

    constexpr std::size_t max_substitutions = 1'000'000;

    NormResult certified(NormCertificate c) {
      return NormResult{NormStatus::certified, std::move(c)};
    }

    struct Candidates {
      std::vector<Word> words;
      std::vector<ExpressionFactor> factors;
      std::set<Word> seen;

      void add(ExpressionFactor f) {
        Word w = f.value();
        if (w.empty() || !seen.insert(w).second) {
          return;
        }
        words.push_back(std::move(w));
        factors.push_back(std::move(f));
      }
    };

    std::optional<std::vector<std::size_t>> search(Word const& target,
                                                   Candidates const& c,
                                                   QuotientHandle const& q,
                                                   std::size_t max_factors) {
      return shortest_product(target, c.words, max_factors, q);
    }

    NormCertificate from_path(Word const& element,
                              NormKind kind,
                              Word const& parameter,
                              Candidates const& c,
                              std::vector<std::size_t> const& path,
                              std::optional<std::size_t> stage) {
      NormCertificate cert;
      cert.element = element;
      cert.kind = kind;
      cert.parameter = parameter;
      cert.bound = Rational(static_cast<std::int64_t>(path.size()));
      for (std::size_t i : path) {
        cert.expression.push_back(c.factors[i]);
      }
      cert.stage = stage;
      return cert;
    }

    // Extended gcd coefficients: sum c_i e_i = gcd(e).
    std::vector<std::int64_t> bezout(std::vector<std::int64_t> const& e) {
      std::vector<std::int64_t> c(e.size(), 0);
      std::int64_t g = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
          continue;
        }
        if (g == 0) {
          g = e[i];
          c[i] = 1;
          continue;
        }
        // s g + t e_i = gcd(g, e_i)
        std::int64_t old_r = g, r = e[i], old_s = 1, s = 0, old_t = 0, tt = 1;
        while (r != 0) {
          std::int64_t const quot = old_r / r;
          old_r = std::exchange(r, old_r - quot * r);
          old_s = std::exchange(s, old_s - quot * s);
          old_t = std::exchange(tt, old_t - quot * tt);
        }
        for (std::size_t k = 0; k < i; ++k) {
          c[k] *= old_s;
        }
        c[i] = old_t;
        g = old_r;
      }
      if (g < 0) {
        for (auto& x : c) {
          x = -x;
        }
      }
      return c;
    }

    std::size_t word_rank(Word const& w) {
      std::size_t r = 0;
      for (Letter l : w.letters()) {
        r = std::max(r, generator_of(l) + 1);
      }
      return r;
    }

    // Every tuple of ball words of the given arity, as an odometer.
    template <class Visit>
    void for_each_tuple(std::vector<Word> const& ball_words, std::size_t arity, Visit&& visit) {
      std::vector<std::size_t> idx(arity, 0);
      std::vector<Word> tuple(arity, ball_words.front());
      while (true) {
        for (std::size_t i = 0; i < arity; ++i) {
          tuple[i] = ball_words[idx[i]];
        }
        visit(tuple);
        std::size_t k = 0;
        while (k < arity && ++idx[k] == ball_words.size()) {
          idx[k] = 0;
          ++k;
        }
        if (k == arity) {
          return;
        }
      }
    }

  }  // namespace

  std::vector<mpz_class> AbelianizationData::invariant_factors() const {
    std::vector<mpz_class> out;
    for (auto const& d : diagonal) {
      if (d != 1) {
        out.push_back(d);
      }
    }
    return out;
  }

  std::vector<mpz_class> AbelianizationData::image(Word const& w) const {
    std::size_t const n = generator_count();
    auto const e = exponent_sums(w, n);
    std::vector<mpz_class> out(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (e[i] != 0) {
          out[j] += mpz_class(static_cast<long>(e[i])) * column_transform[i][j];
        }
      }
    }
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
      out[i] = mod(out[i], diagonal[i]);
    }
    return out;
  }

  bool AbelianizationData::is_zero(Word const& w) const {
    auto const v = image(w);
    return std::all_of(v.begin(), v.end(), [](mpz_class const& x) { return x == 0; });
  }

  std::optional<mpz_class> AbelianizationData::multiple_of(Word const& target, Word const& generator) const {
    auto const b = image(target);
    auto const a = image(generator);
    std::size_t const tor = diagonal.size();
    std::optional<mpz_class> fixed;
    for (std::size_t j = tor; j < a.size(); ++j) {
      if (a[j] == 0) {
        if (b[j] != 0) {
          return std::nullopt;
        }
        continue;
      }
      if (b[j] % a[j] != 0) {
        return std::nullopt;
      }
      mpz_class const k = b[j] / a[j];
      if (fixed && *fixed != k) {
        return std::nullopt;
      }
      fixed = k;
    }
    if (fixed) {
      for (std::size_t i = 0; i < tor; ++i) {
        if (mod(*fixed * a[i] - b[i], diagonal[i]) != 0) {
          return std::nullopt;
        }
      }
      return fixed;
    }
    mpz_class r = 0;
    mpz_class m = 1;
    for (std::size_t i = 0; i < tor; ++i) {
      mpz_class const& d = diagonal[i];
      if (d == 1) {
        continue;
      }
      mpz_class g;
      mpz_class const ai = mod(a[i], d);
      mpz_gcd(g.get_mpz_t(), ai.get_mpz_t(), d.get_mpz_t());
      if (b[i] % g != 0) {
        return std::nullopt;
      }
      mpz_class const dg = d / g;
      mpz_class ri = 0;
      if (dg != 1) {
        mpz_class inv;
        mpz_class const ag = mod(ai / g, dg);
        mpz_invert(inv.get_mpz_t(), ag.get_mpz_t(), dg.get_mpz_t());
        ri = mod((b[i] / g) * inv, dg);
      }
      if (!crt(r, m, ri, dg)) {
        return std::nullopt;
      }
    }
    return r;
  }

  AbelianizationData abelianization(Presentation const& p) {
    std::size_t const n = p.alphabet.rank();
    Matrix m;
    for (auto const& r : p.relators) {
      auto const e = exponent_sums(r, n);
      std::vector<mpz_class> row(n);
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = static_cast<long>(e[j]);
      }
      m.push_back(std::move(row));
    }
    return smith(std::move(m), n);
  }

  AbelianizationData abelianization(RelatorSet const& r) {
    return abelianization(Presentation{r.alphabet(), r.relators()});
  }

  Word ExpressionFactor::value() const {
    return conjugator * base * conjugator.inverse();
  }

  Word NormCertificate::product() const {
    Word out;
    for (auto const& f : expression) {
      out *= f.value();
    }
    return out;
  }

  NormResult ell_alpha_bound(Word const& gamma,
                             Word const& alpha,
                             QuotientHandle const& q,
                             NormBudget budget,
                             std::optional<std::size_t> stage) {
    Alphabet const& a = q.alphabet();
    check_alphabet(a, gamma);
    check_alphabet(a, alpha);
    if (!abelianization(q.relators()).multiple_of(gamma, alpha)) {
      NormCertificate c;
      c.element = gamma;
      c.kind = NormKind::ell_alpha;
      c.parameter = alpha;
      c.stage = stage;
      return NormResult{NormStatus::infinite, std::move(c)};
    }
    Candidates c;
    if (!alpha.empty()) {
      for (auto const& g : ball(a.rank(), budget.max_conjugator_length)) {
        c.add({g, alpha});
        c.add({g, alpha.inverse()});
      }
    }
    auto const path = search(gamma, c, q, budget.max_factors);
    if (!path) {
      return {};
    }
    return certified(from_path(gamma, NormKind::ell_alpha, alpha, c, *path, stage));
  }

  NormResult cl_bound(Word const& gamma,
                      QuotientHandle const& q,
                      NormBudget budget,
                      std::optional<std::size_t> stage) {
    Alphabet const& a = q.alphabet();
    check_alphabet(a, gamma);
    if (!abelianization(q.relators()).is_zero(gamma)) {
      NormCertificate c;
      c.element = gamma;
      c.kind = NormKind::cl;
      c.stage = stage;
      return NormResult{NormStatus::infinite, std::move(c)};
    }
    auto const words = ball(a.rank(), budget.max_conjugator_length);
    Candidates c;
    for (auto const& u : words) {
      for (auto const& v : words) {
        c.add({Word(), commutator(u, v)});
      }
    }
    auto const path = search(gamma, c, q, budget.max_factors);
    if (!path) {
      return {};
    }
    return certified(from_path(gamma, NormKind::cl, Word(), c, *path, stage));
  }

  NormResult w_length_bound(Word const& g,
                            Word const& w,
                            QuotientHandle const& q,
                            NormBudget budget,
                            std::optional<std::size_t> stage) {
    Alphabet const& a = q.alphabet();
    check_alphabet(a, g);
    std::size_t const n = std::max<std::size_t>(word_rank(w), 1);
    if (is_silly(w, n) && !w.empty()) {
      auto const coeffs = bezout(exponent_sums(w, n));
      std::vector<Word> images;
      for (auto c : coeffs) {
        images.push_back(g.pow(c));
      }
      NormCertificate cert;
      cert.element = g;
      cert.kind = NormKind::w_length;
      cert.parameter = w;
      cert.bound = g.empty() ? Rational(0) : Rational(1);
      if (!g.empty()) {
        cert.expression.push_back({Word(), substitute(w, images)});
      }
      cert.stage = stage;
      return certified(std::move(cert));
    }
    auto const words = ball(a.rank(), budget.max_conjugator_length);
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (tuples > max_substitutions / words.size()) {
        return {};
      }
      tuples *= words.size();
    }
    Candidates c;
    for_each_tuple(words, n, [&](std::vector<Word> const& tuple) {
      Word const value = substitute(w, tuple);
      c.add({Word(), value});
      c.add({Word(), value.inverse()});
    });
    auto const path = search(g, c, q, budget.max_factors);
    if (!path) {
      return {};
    }
    return certified(from_path(g, NormKind::w_length, w, c, *path, stage));
  }

  NormCertificate stable_bound_from_cert(RelatorCertificate const& c, std::optional<std::size_t> stage) {
    auto const* spec = std::get_if<SclSpec>(&c.spec);
    if (spec == nullptr || c.kind() != ConsequenceKind::stable_norm) {
      throw InvalidInput("stable bounds need a stable-norm certificate");
    }
    if (!consequence_identity_holds(c)) {
      throw InvalidInput("certificate identity does not hold");
    }
    NormCertificate out;
    out.element = spec->gamma;
    out.kind = NormKind::stable;
    out.parameter = spec->alpha;
    out.bound = spec->stable_bound();
    out.power = spec->q;
    for (auto const& k : spec->kappas) {
      out.expression.push_back({k, spec->gamma1});
    }
    out.stage = stage;
    return out;
  }

  NormCertificate repeat(NormCertificate const& c, std::size_t k) {
    if (k == 0) {
      throw InvalidInput("repeat count must be positive");
    }
    NormCertificate out = c;
    out.expression.clear();
    for (std::size_t i = 0; i < k; ++i) {
      out.expression.insert(out.expression.end(), c.expression.begin(), c.expression.end());
    }
    if (c.kind == NormKind::stable) {
      out.power = c.power * k;
    } else {
      out.element = c.element.pow(static_cast<std::int64_t>(k));
      out.bound = c.bound * static_cast<std::int64_t>(k);
    }
    return out;
  }

  NormCertificate conjugate(NormCertificate const& c, Word const& g) {
    NormCertificate out = c;
    out.element = g * c.element * g.inverse();
    for (auto& f : out.expression) {
      f.conjugator = g * f.conjugator;
    }
    return out;
  }

  bool replay(NormCertificate const& c, QuotientHandle const& q) {
    Word const lhs = c.element.pow(static_cast<std::int64_t>(c.power));
    Word const rhs = c.product();
    if (q.relators().empty()) {
      return lhs == rhs;
    }
    return eq_in_quotient(lhs, rhs, q).status == Triviality::trivial;
  }

  char const* to_string(NormKind kind) {
    switch (kind) {
      case NormKind::ell_alpha: return "ell_alpha";
      case NormKind::cl: return "cl";
      case NormKind::w_length: return "w_length";
      case NormKind::stable: return "stable";
    }
    return "?";
  }

  char const* to_string(NormStatus status) {
    switch (status) {
      case NormStatus::certified: return "certified";
      case NormStatus::unknown: return "unknown";
      case NormStatus::infinite: return "infinite";
    }
    return "?";
  }

}  // namespace forge
