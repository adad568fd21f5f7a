#include "forge/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "forge/errors.hpp"

namespace forge {

  namespace {

    bool is_identifier(std::string_view name) {
      if (name.empty()) {
        return false;
      }
      return std::none_of(name.begin(), name.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0;
      });
    }

    void push_reduced(std::vector<Letter>& out, Letter l) {
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }

    // Guard against exponent-driven blow-up in parsed text.
    constexpr std::size_t max_parsed_length = 200'000'000;

    class WordParser {
     public:
      WordParser(std::string_view text, Alphabet const& alphabet)
          : text_(text), alphabet_(alphabet) {}

      Word parse() {
        skip_space();
        std::vector<Letter> raw = sequence();
        skip_space();
        if (pos_ != text_.size()) {
          throw ParseError("unexpected character '" + std::string(1, text_[pos_])
                               + "' in word",
                           pos_);
        }
        return Word::reduce(raw);
      }

     private:
      void skip_space() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
          ++pos_;
        }
      }

      std::optional<std::size_t> number() {
        skip_space();
        if (pos_ >= text_.size()
            || std::isdigit(static_cast<unsigned char>(text_[pos_])) == 0) {
          return std::nullopt;
        }
        std::size_t value = 0;
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
          value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
          if (value > max_parsed_length) {
            throw ParseError("exponent too large", pos_);
          }
          ++pos_;
        }
        return value;
      }

      std::vector<Letter> sequence() {
        std::vector<Letter> out;
        while (true) {
          skip_space();
          if (pos_ >= text_.size() || text_[pos_] == ')') {
            return out;
          }
          std::vector<Letter> f = factor();
          std::size_t exponent = number().value_or(1);
          if (f.size() * exponent > max_parsed_length) {
            throw ParseError("word too long", pos_);
          }
          for (std::size_t k = 0; k < exponent; ++k) {
            for (Letter l : f) {
              push_reduced(out, l);
            }
          }
        }
      }

      std::vector<Letter> factor() {
        std::size_t const start = pos_;
        char const c = text_[pos_];
        if (c == '(') {
          ++pos_;
          std::vector<Letter> inner = sequence();
          if (pos_ >= text_.size() || text_[pos_] != ')') {
            throw ParseError("unbalanced parenthesis in word", start);
          }
          ++pos_;
          return inner;
        }
        if (c == '1') {
          ++pos_;
          return {};
        }
        if (c == '[') {
          ++pos_;
          if (pos_ >= text_.size() || (text_[pos_] != 'g' && text_[pos_] != 'G')) {
            throw ParseError("expected [gN] or [GN]", start);
          }
          bool const inverted = text_[pos_] == 'G';
          ++pos_;
          auto const index = number();
          skip_space();
          if (!index || pos_ >= text_.size() || text_[pos_] != ']') {
            throw ParseError("malformed generator index", start);
          }
          ++pos_;
          if (*index >= alphabet_.rank()) {
            throw InvalidInput("generator index " + std::to_string(*index)
                               + " outside alphabet of rank "
                               + std::to_string(alphabet_.rank()));
          }
          return {make_letter(*index, inverted)};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0) {
          ++pos_;
          bool const inverted = std::isupper(static_cast<unsigned char>(c)) != 0;
          char const lower
              = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          auto const g = alphabet_.index_of(std::string_view(&lower, 1));
          if (!g) {
            throw InvalidInput("unknown generator '" + std::string(1, lower)
                               + "'");
          }
          return {make_letter(*g, inverted)};
        }
        throw ParseError("unexpected character '" + std::string(1, c)
                             + "' in word",
                         start);
      }

      std::string_view text_;
      Alphabet const& alphabet_;
      std::size_t pos_ = 0;
    };

    std::string letter_text(Letter l, Alphabet const& alphabet) {
      std::size_t const g = generator_of(l);
      std::string const& name = alphabet.name(g);
      if (name.size() == 1
          && std::islower(static_cast<unsigned char>(name[0])) != 0) {
        char c = name[0];
        if (is_inverted(l)) {
          c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        return std::string(1, c);
      }
      return std::string(is_inverted(l) ? "[G" : "[g") + std::to_string(g)
             + "]";
    }

    // Letter order used for enumeration: a, A, b, B, ...
    std::size_t letter_rank(Letter l) {
      return 2 * generator_of(l) + (is_inverted(l) ? 1 : 0);
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) {
      throw InvalidInput("alphabet must have rank at least 1");
    }
    std::unordered_set<std::string> seen;
    for (auto const& n : names_) {
      if (!is_identifier(n)) {
        throw InvalidInput("invalid generator name '" + n + "'");
      }
      if (!seen.insert(n).second) {
        throw InvalidInput("duplicate generator name '" + n + "'");
      }
    }
  }

  Alphabet Alphabet::standard(std::size_t rank) {
    std::vector<std::string> names;
    names.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      if (i < 26) {
        names.emplace_back(1, static_cast<char>('a' + i));
      } else {
        names.push_back("g" + std::to_string(i));
      }
    }
    return Alphabet(std::move(names));
  }

  std::string const& Alphabet::name(std::size_t generator) const {
    if (generator >= names_.size()) {
      throw InvalidInput("generator index out of range");
    }
    return names_[generator];
  }

  std::optional<std::size_t> Alphabet::index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_.begin());
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  Word Word::reduce(std::span<Letter const> raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (Letter l : raw) {
      if (l == 0) {
        throw InvalidInput("zero is not a letter");
      }
      push_reduced(out, l);
    }
    return Word(std::move(out));
  }

  Word Word::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& l : out) {
      l = -l;
    }
    return Word(std::move(out));
  }

  Word Word::pow(std::int64_t exponent) const {
    if (exponent < 0) {
      return inverse().pow(-exponent);
    }
    if (exponent == 0 || letters_.empty()) {
      return Word();
    }
    CyclicWord const c = cyclic_reduce(*this);
    std::vector<Letter> out;
    out.reserve(2 * c.conjugator.size()
                + c.word.size() * static_cast<std::size_t>(exponent));
    out.insert(out.end(), c.conjugator.letters_.begin(),
               c.conjugator.letters_.end());
    for (std::int64_t k = 0; k < exponent; ++k) {
      out.insert(out.end(), c.word.letters_.begin(), c.word.letters_.end());
    }
    Word const tail = c.conjugator.inverse();
    out.insert(out.end(), tail.letters_.begin(), tail.letters_.end());
    return Word(std::move(out));
  }

  Word Word::subword(std::size_t pos, std::size_t len) const {
    if (pos > letters_.size() || len > letters_.size() - pos) {
      throw InvalidInput("subword out of range");
    }
    return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
  }

  Word Word::rotate(std::size_t k) const {
    if (letters_.empty()) {
      return *this;
    }
    k %= letters_.size();
    std::vector<Letter> out;
    out.reserve(letters_.size());
    out.insert(out.end(), letters_.begin() + static_cast<std::ptrdiff_t>(k),
               letters_.end());
    out.insert(out.end(), letters_.begin(),
               letters_.begin() + static_cast<std::ptrdiff_t>(k));
    return reduce(out);
  }

  bool Word::is_cyclically_reduced() const noexcept {
    return letters_.size() < 2 || letters_.front() != -letters_.back();
  }

  Word operator*(Word const& lhs, Word const& rhs) {
    Word out = lhs;
    out *= rhs;
    return out;
  }

  Word& Word::operator*=(Word const& rhs) {
    letters_.reserve(letters_.size() + rhs.letters_.size());
    for (Letter l : rhs.letters_) {
      push_reduced(letters_, l);
    }
    return *this;
  }

  std::size_t Word::hash() const noexcept {
    // FNV-1a over the letter encoding.
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter l : letters_) {
      h ^= static_cast<std::uint32_t>(l);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  bool ShortLex::operator()(Word const& lhs, Word const& rhs) const {
    if (lhs.size() != rhs.size()) {
      return lhs.size() < rhs.size();
    }
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (lhs[i] != rhs[i]) {
        return letter_rank(lhs[i]) < letter_rank(rhs[i]);
      }
    }
    return false;
  }

  Word reduce(Alphabet const& alphabet, std::span<Letter const> raw) {
    for (Letter l : raw) {
      if (l == 0 || generator_of(l) >= alphabet.rank()) {
        throw InvalidInput("letter " + std::to_string(l)
                           + " outside alphabet of rank "
                           + std::to_string(alphabet.rank()));
      }
    }
    return Word::reduce(raw);
  }

  void check_alphabet(Alphabet const& alphabet, Word const& w) {
    for (Letter l : w.letters()) {
      if (generator_of(l) >= alphabet.rank()) {
        throw InvalidInput("word uses generator " + std::to_string(generator_of(l))
                           + " outside alphabet of rank "
                           + std::to_string(alphabet.rank()));
      }
    }
  }

  Word commutator(Word const& u, Word const& v) {
    return u * v * u.inverse() * v.inverse();
  }

  Word parse_word(std::string_view text, Alphabet const& alphabet) {
    return WordParser(text, alphabet).parse();
  }

  std::string to_string(Word const& w, Alphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) {
        ++j;
      }
      out += letter_text(w[i], alphabet);
      if (j - i > 1) {
        out += std::to_string(j - i);
      }
      i = j;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cyclic structure
  ////////////////////////////////////////////////////////////////////////

  CyclicWord cyclic_reduce(Word const& w) {
    auto const letters = w.letters();
    std::size_t i = 0;
    std::size_t j = letters.size();
    while (j >= i + 2 && letters[i] == -letters[j - 1]) {
      ++i;
      --j;
    }
    return CyclicWord{w.subword(i, j - i), w.subword(0, i)};
  }

  std::size_t rotation_period(std::span<Letter const> cyclic) {
    std::size_t const n = cyclic.size();
    if (n == 0) {
      return 0;
    }
    // Knuth-Morris-Pratt prefix function.
    std::vector<std::size_t> pi(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t k = pi[i - 1];
      while (k > 0 && cyclic[i] != cyclic[k]) {
        k = pi[k - 1];
      }
      if (cyclic[i] == cyclic[k]) {
        ++k;
      }
      pi[i] = k;
    }
    std::size_t const p = n - pi[n - 1];
    return n % p == 0 ? p : n;
  }

  PrimitiveRoot primitive_root(Word const& w) {
    if (w.empty()) {
      throw DomainError("the trivial word has no primitive root");
    }
    CyclicWord c = cyclic_reduce(w);
    std::size_t const p = rotation_period(c.word.letters());
    std::size_t const exponent = c.word.size() / p;
    return PrimitiveRoot{CyclicWord{c.word.subword(0, p), std::move(c.conjugator)},
                         exponent};
  }

  std::size_t least_rotation(std::span<Letter const> s) {
    std::size_t const n = s.size();
    if (n == 0) {
      return 0;
    }
    // Booth's algorithm over the doubled sequence.
    std::vector<std::ptrdiff_t> f(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t i) { return s[i % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
      Letter const sj = at(j);
      std::ptrdiff_t i = f[j - k - 1];
      while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
        if (sj < at(k + static_cast<std::size_t>(i) + 1)) {
          k = j - static_cast<std::size_t>(i) - 1;
        }
        i = f[static_cast<std::size_t>(i)];
      }
      if (sj != at(k + static_cast<std::size_t>(i) + 1)) {
        // i == -1 here
        if (sj < at(k)) {
          k = j;
        }
        f[j - k] = -1;
      } else {
        f[j - k] = i + 1;
      }
    }
    return k % n;
  }

  Word conjugacy_key(Word const& w) {
    CyclicWord const c = cyclic_reduce(w);
    return c.word.rotate(least_rotation(c.word.letters()));
  }

  bool are_conjugate(Word const& u, Word const& v) {
    return conjugacy_key(u) == conjugacy_key(v);
  }

  std::size_t common_prefix_length(std::span<Letter const> u,
                                   std::span<Letter const> v) noexcept {
    std::size_t const n = std::min(u.size(), v.size());
    std::size_t i = 0;
    while (i < n && u[i] == v[i]) {
      ++i;
    }
    return i;
  }

  ////////////////////////////////////////////////////////////////////////
  // Tree geometry
  ////////////////////////////////////////////////////////////////////////

  TreeGeometry tree_geometry(Word const& u, Word const& v, Word const& basepoint) {
    Word const b = basepoint.inverse();
    Word const bu = b * u;
    Word const bv = b * v;
    return TreeGeometry{(u.inverse() * v).size(),
                        common_prefix_length(bu.letters(), bv.letters())};
  }

  TranslationLength translation_length(Word const& w) {
    std::size_t const n = cyclic_reduce(w).word.size();
    return TranslationLength{n, n};
  }

  std::size_t displacement(Word const& g, Word const& x) {
    return (x.inverse() * g * x).size();
  }

  std::size_t ball_size(std::size_t rank, std::size_t radius) {
    if (rank == 0) {
      return 1;
    }
    std::size_t total = 1;
    std::size_t sphere = 2 * rank;
    constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 1; r <= radius; ++r) {
      if (total > cap - sphere) {
        return cap;
      }
      total += sphere;
      if (sphere > cap / (2 * rank - 1 == 0 ? 1 : 2 * rank - 1)) {
        sphere = cap;
      } else {
        sphere *= (2 * rank - 1);
      }
    }
    return total;
  }

  std::vector<Word> ball(std::size_t rank, std::size_t radius) {
    std::vector<Word> out{Word()};
    std::size_t begin = 0;
    for (std::size_t r = 1; r <= radius; ++r) {
      std::size_t const end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t g = 0; g < rank; ++g) {
          for (bool inv : {false, true}) {
            Letter const l = make_letter(g, inv);
            Word const& base = out[i];
            if (!base.empty() && base.back() == -l) {
              continue;
            }
            out.push_back(base * Word::generator(g, inv));
          }
        }
      }
      begin = end;
    }
    return out;
  }

  EnergyReport energy(std::span<Word const> elements,
                      std::size_t rank,
                      std::size_t vertex_budget) {
    EnergyReport report;
    if (elements.empty()) {
      return report;
    }
    std::size_t radius = 0;
    for (auto const& g : elements) {
      radius = std::max(radius, g.size());
    }
    if (ball_size(rank, radius) > vertex_budget) {
      throw BudgetExceeded("energy search ball of radius "
                           + std::to_string(radius) + " exceeds vertex budget");
    }
    bool first = true;
    for (Word const& x : ball(rank, radius)) {
      std::size_t worst = 0;
      std::size_t sum = 0;
      for (auto const& g : elements) {
        std::size_t const d = displacement(g, x);
        worst = std::max(worst, d);
        sum += d;
      }
      if (first || worst < report.linf) {
        report.linf = worst;
        report.minimizer = x;
      }
      if (first || sum < report.l1) {
        report.l1 = sum;
        report.l1_minimizer = x;
      }
      first = false;
    }
    return report;
  }

  std::vector<std::int64_t> exponent_sums(Word const& w, std::size_t rank) {
    std::vector<std::int64_t> out(rank, 0);
    for (Letter l : w.letters()) {
      std::size_t const g = generator_of(l);
      if (g >= rank) {
        throw InvalidInput("word uses a generator outside the given rank");
      }
      out[g] += is_inverted(l) ? -1 : 1;
    }
    return out;
  }

}  // namespace forge
