#include "forge/witness.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "forge/errors.hpp"

namespace forge {

  Formula Formula::make_atom(Atom a) {
    Formula f;
    f.kind = Kind::atom;
    f.atom = std::move(a);
    return f;
  }

  Formula Formula::make(Kind kind, std::vector<Formula> children) {
    if (children.size() == 1) {
      return std::move(children.front());
    }
    Formula f;
    f.kind = kind;
    for (auto& c : children) {
      if (c.kind == kind) {
        for (auto& g : c.children) {
          f.children.push_back(std::move(g));
        }
      } else {
        f.children.push_back(std::move(c));
      }
    }
    return f;
  }

  Quantifier Sentence::quantifier_of(std::size_t variable) const {
    std::size_t seen = 0;
    for (auto const& b : prefix) {
      seen += b.variables.size();
      if (variable < seen) {
        return b.quantifier;
      }
    }
    throw InvalidInput("symbol " + std::to_string(variable) + " is not a bound variable");
  }

  namespace {

    enum class Tok { ident, constant, number, lparen, rparen, lbracket, rbracket, comma, caret,
                     star, eq, neq, amp, bar, minus, end };

    struct Token {
      Tok kind;
      std::string text;
      std::size_t pos;
    };

    std::vector<Token> tokenize(std::string_view s) {
      std::vector<Token> out;
      std::size_t i = 0;
      auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
      };
      while (i < s.size()) {
        char const c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
          ++i;
          continue;
        }
        std::size_t const start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
          while (i < s.size() && ident_char(s[i])) {
            ++i;
          }
          out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
          continue;
        }
        if (c == '$') {
          ++i;
          while (i < s.size() && ident_char(s[i])) {
            ++i;
          }
          if (i == start + 1) {
            throw ParseError("expected a constant name after '$'", start);
          }
          out.push_back({Tok::constant, std::string(s.substr(start, i - start)), start});
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])) != 0) {
            ++i;
          }
          out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
          continue;
        }
        if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({Tok::neq, "!=", start});
          i += 2;
          continue;
        }
        Tok kind{};
        switch (c) {
          case '(': kind = Tok::lparen; break;
          case ')': kind = Tok::rparen; break;
          case '[': kind = Tok::lbracket; break;
          case ']': kind = Tok::rbracket; break;
          case ',': kind = Tok::comma; break;
          case '^': kind = Tok::caret; break;
          case '*': kind = Tok::star; break;
          case '=': kind = Tok::eq; break;
          case '&': kind = Tok::amp; break;
          case '|': kind = Tok::bar; break;
          case '-': kind = Tok::minus; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back({kind, std::string(1, c), start});
        ++i;
      }
      out.push_back({Tok::end, "", s.size()});
      return out;
    }

    bool is_quantifier(Token const& t) {
      return t.kind == Tok::ident && (t.text == "E" || t.text == "A");
    }

    class SentenceParser {
     public:
      explicit SentenceParser(std::string_view text) : tokens_(tokenize(text)) {}

      Sentence parse() {
        Sentence s;
        while (is_quantifier(peek())) {
          QuantifierBlock block;
          block.quantifier = next().text == "E" ? Quantifier::exists : Quantifier::forall;
          while (peek().kind == Tok::ident && !is_quantifier(peek())) {
            Token const& t = next();
            if (std::find(names_.begin(), names_.end(), t.text) != names_.end()) {
              throw ParseError("variable '" + t.text + "' bound twice", t.pos);
            }
            names_.push_back(t.text);
            block.variables.push_back(t.text);
          }
          if (block.variables.empty()) {
            throw ParseError("quantifier without variables", peek().pos);
          }
          s.prefix.push_back(std::move(block));
        }
        if (s.prefix.empty()) {
          throw ParseError("expected a quantifier block", peek().pos);
        }
        variables_ = names_.size();
        s.matrix = parse_or();
        if (peek().kind != Tok::end) {
          throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        }
        s.variable_count = variables_;
        s.symbols = Alphabet(names_);
        return s;
      }

     private:
      Token const& peek() const {
        return tokens_[pos_];
      }
      Token const& next() {
        return tokens_[pos_++];
      }
      void expect(Tok kind, char const* what) {
        if (peek().kind != kind) {
          throw ParseError(std::string("expected ") + what, peek().pos);
        }
        ++pos_;
      }

      Formula parse_or() {
        std::vector<Formula> parts{parse_and()};
        while (peek().kind == Tok::bar) {
          ++pos_;
          parts.push_back(parse_and());
        }
        return Formula::make(Formula::Kind::disjunction, std::move(parts));
      }

      Formula parse_and() {
        std::vector<Formula> parts{parse_primary()};
        while (peek().kind == Tok::amp) {
          ++pos_;
          parts.push_back(parse_primary());
        }
        return Formula::make(Formula::Kind::conjunction, std::move(parts));
      }

      Formula parse_primary() {
        std::size_t const saved = pos_;
        std::size_t const saved_names = names_.size();
        try {
          return Formula::make_atom(parse_atom());
        } catch (ParseError const& atom_error) {
          pos_ = saved;
          names_.resize(saved_names);
          if (peek().kind != Tok::lparen) {
            throw;
          }
          try {
            ++pos_;
            Formula f = parse_or();
            expect(Tok::rparen, "')'");
            return f;
          } catch (ParseError const& group_error) {
            if (group_error.position() >= atom_error.position()) {
              throw;
            }
            throw atom_error;
          }
        }
      }

      Atom parse_atom() {
        std::vector<Letter> lhs = parse_word();
        bool equation = true;
        if (peek().kind == Tok::eq) {
          equation = true;
        } else if (peek().kind == Tok::neq) {
          equation = false;
        } else {
          throw ParseError("expected '=' or '!='", peek().pos);
        }
        ++pos_;
        std::vector<Letter> rhs = parse_word();
        Word const w = Word::reduce(lhs) * Word::reduce(rhs).inverse();
        return Atom{w, equation};
      }

      bool starts_factor(Token const& t) const {
        switch (t.kind) {
          case Tok::ident:
          case Tok::constant:
          case Tok::number:
          case Tok::lparen:
          case Tok::lbracket:
            return true;
          default:
            return false;
        }
      }

      std::vector<Letter> parse_word() {
        if (!starts_factor(peek())) {
          throw ParseError("expected a word", peek().pos);
        }
        std::vector<Letter> out = parse_factor();
        while (true) {
          if (peek().kind == Tok::star) {
            ++pos_;
            if (!starts_factor(peek())) {
              throw ParseError("expected a word after '*'", peek().pos);
            }
          } else if (!starts_factor(peek())) {
            return out;
          }
          std::vector<Letter> more = parse_factor();
          out.insert(out.end(), more.begin(), more.end());
        }
      }

      std::vector<Letter> parse_factor() {
        Token const t = next();
        Word base;
        switch (t.kind) {
          case Tok::ident: {
            if (is_quantifier(t)) {
              throw ParseError("quantifier inside the matrix: input is not prenex", t.pos);
            }
            auto it = std::find(names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(variables_),
                                t.text);
            if (it == names_.begin() + static_cast<std::ptrdiff_t>(variables_)) {
              throw ParseError("unbound variable '" + t.text + "'", t.pos);
            }
            base = Word::generator(static_cast<std::size_t>(it - names_.begin()));
            break;
          }
          case Tok::constant: {
            auto it = std::find(names_.begin() + static_cast<std::ptrdiff_t>(variables_), names_.end(),
                                t.text);
            std::size_t const index = static_cast<std::size_t>(it - names_.begin());
            if (it == names_.end()) {
              names_.push_back(t.text);
            }
            base = Word::generator(index);
            break;
          }
          case Tok::number:
            if (t.text != "1") {
              throw ParseError("only 1 may appear as a number inside a word", t.pos);
            }
            break;
          case Tok::lparen:
            base = Word::reduce(parse_word());
            expect(Tok::rparen, "')'");
            break;
          case Tok::lbracket: {
            Word const u = Word::reduce(parse_word());
            expect(Tok::comma, "','");
            Word const v = Word::reduce(parse_word());
            expect(Tok::rbracket, "']'");
            base = commutator(u, v);
            break;
          }
          default:
            throw ParseError("expected a word", t.pos);
        }
        if (peek().kind == Tok::caret) {
          ++pos_;
          bool negative = false;
          if (peek().kind == Tok::minus) {
            negative = true;
            ++pos_;
          }
          if (peek().kind != Tok::number) {
            throw ParseError("expected an integer exponent", peek().pos);
          }
          Token const& n = next();
          if (n.text.size() > 9) {
            throw ParseError("exponent too large", n.pos);
          }
          auto const e = static_cast<std::int64_t>(std::stoll(n.text));
          base = base.pow(negative ? -e : e);
        }
        return {base.letters().begin(), base.letters().end()};
      }

      std::vector<Token> tokens_;
      std::size_t pos_ = 0;
      std::vector<std::string> names_;
      std::size_t variables_ = 0;
    };

    std::string formula_text(Formula const& f, Alphabet const& symbols) {
      switch (f.kind) {
        case Formula::Kind::atom:
          return word_text(f.atom.word, symbols) + (f.atom.equation ? " = 1" : " != 1");
        case Formula::Kind::disjunction: {
          std::string out;
          for (std::size_t i = 0; i < f.children.size(); ++i) {
            Formula const& c = f.children[i];
            out += i ? " | " : "";
            out += c.kind == Formula::Kind::atom ? formula_text(c, symbols)
                                                 : "(" + formula_text(c, symbols) + ")";
          }
          return out;
        }
        case Formula::Kind::conjunction: {
          std::string out;
          for (std::size_t i = 0; i < f.children.size(); ++i) {
            out += i ? " & " : "";
            out += "(" + formula_text(f.children[i], symbols) + ")";
          }
          return out;
        }
      }
      return {};
    }

    void collect_constants(Formula const& f, std::size_t variables, std::vector<std::size_t>& seen) {
      if (f.kind != Formula::Kind::atom) {
        for (auto const& c : f.children) {
          collect_constants(c, variables, seen);
        }
        return;
      }
      for (Letter l : f.atom.word.letters()) {
        std::size_t const g = generator_of(l);
        if (g >= variables && std::find(seen.begin(), seen.end(), g) == seen.end()) {
          seen.push_back(g);
        }
      }
    }

    Formula negated(Formula const& f) {
      switch (f.kind) {
        case Formula::Kind::atom:
          return Formula::make_atom(Atom{f.atom.word, !f.atom.equation});
        case Formula::Kind::conjunction:
        case Formula::Kind::disjunction: {
          std::vector<Formula> parts;
          for (auto const& c : f.children) {
            parts.push_back(negated(c));
          }
          return Formula::make(f.kind == Formula::Kind::conjunction ? Formula::Kind::disjunction
                                                                    : Formula::Kind::conjunction,
                               std::move(parts));
        }
      }
      return f;
    }

    std::vector<std::vector<Atom>> cnf(Formula const& f, std::size_t cap) {
      switch (f.kind) {
        case Formula::Kind::atom:
          return {{f.atom}};
        case Formula::Kind::conjunction: {
          std::vector<std::vector<Atom>> out;
          for (auto const& c : f.children) {
            for (auto& clause : cnf(c, cap)) {
              out.push_back(std::move(clause));
              if (out.size() > cap) {
                throw BudgetExceeded("conjunctive normal form exceeds the clause cap");
              }
            }
          }
          return out;
        }
        case Formula::Kind::disjunction: {
          std::vector<std::vector<Atom>> out{{}};
          for (auto const& c : f.children) {
            auto const part = cnf(c, cap);
            if (out.size() * part.size() > cap) {
              throw BudgetExceeded("conjunctive normal form exceeds the clause cap");
            }
            std::vector<std::vector<Atom>> next;
            for (auto const& left : out) {
              for (auto const& right : part) {
                auto clause = left;
                clause.insert(clause.end(), right.begin(), right.end());
                next.push_back(std::move(clause));
              }
            }
            out = std::move(next);
          }
          return out;
        }
      }
      return {};
    }

    // Merged quantifier pattern.
    std::vector<Quantifier> pattern(Sentence const& s) {
      std::vector<Quantifier> out;
      for (auto const& b : s.prefix) {
        if (out.empty() || out.back() != b.quantifier) {
          out.push_back(b.quantifier);
        }
      }
      return out;
    }

    bool is_exists_forall(std::vector<Quantifier> const& p) {
      return p.size() == 1 || (p.size() == 2 && p[0] == Quantifier::exists);
    }

    bool eval_formula(Formula const& f, FiniteGroup const& g, std::span<std::size_t const> values) {
      switch (f.kind) {
        case Formula::Kind::atom:
          return (g.evaluate(f.atom.word, values) == 0) == f.atom.equation;
        case Formula::Kind::conjunction:
          return std::all_of(f.children.begin(), f.children.end(),
                             [&](Formula const& c) { return eval_formula(c, g, values); });
        case Formula::Kind::disjunction:
          return std::any_of(f.children.begin(), f.children.end(),
                             [&](Formula const& c) { return eval_formula(c, g, values); });
      }
      return false;
    }

    void check_budget(std::size_t order, std::size_t count, std::size_t budget) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < count; ++i) {
        if (total > budget / std::max<std::size_t>(order, 1)) {
          throw BudgetExceeded("finite enumeration of " + std::to_string(order) + "^"
                               + std::to_string(count) + " assignments exceeds the budget");
        }
        total *= order;
      }
      if (total > budget) {
        throw BudgetExceeded("finite enumeration exceeds the budget");
      }
    }

    // Visits every assignment of values to the listed slots; stops when the
    // visitor returns false.
    template <class Visit>
    bool for_each_assignment(std::vector<std::size_t>& values,
                             std::span<std::size_t const> slots,
                             std::size_t order,
                             Visit&& visit) {
      for (std::size_t s : slots) {
        values[s] = 0;
      }
      while (true) {
        if (!visit()) {
          return false;
        }
        std::size_t k = 0;
        while (k < slots.size() && ++values[slots[k]] == order) {
          values[slots[k]] = 0;
          ++k;
        }
        if (k == slots.size()) {
          return true;
        }
      }
    }

  }  // namespace

  Sentence parse_sentence(std::string_view text) {
    return SentenceParser(text).parse();
  }

  std::string word_text(Word const& w, Alphabet const& symbols) {
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
      out += out.empty() ? "" : " ";
      out += symbols.name(generator_of(w[i]));
      std::size_t const run = j - i;
      if (is_inverted(w[i])) {
        out += "^-" + std::to_string(run);
      } else if (run > 1) {
        out += "^" + std::to_string(run);
      }
      i = j;
    }
    return out;
  }

  std::string to_string(Sentence const& s) {
    std::string out;
    for (auto const& b : s.prefix) {
      out += b.quantifier == Quantifier::exists ? "E" : "A";
      for (auto const& v : b.variables) {
        out += " " + v;
      }
      out += " ";
    }
    std::string m = formula_text(s.matrix, s.symbols);
    if (s.matrix.kind != Formula::Kind::conjunction) {
      m = "(" + m + ")";
    }
    // Constants are numbered by first use. When reduction erased or
    // reordered them, zero powers up front pin the numbering.
    std::vector<std::size_t> seen;
    collect_constants(s.matrix, s.variable_count, seen);
    bool in_order = seen.size() == s.constant_count();
    for (std::size_t i = 0; in_order && i < seen.size(); ++i) {
      in_order = seen[i] == s.variable_count + i;
    }
    if (!in_order) {
      std::string pins;
      for (std::size_t c = s.variable_count; c < s.symbols.rank(); ++c) {
        pins += s.symbols.name(c) + "^0 ";
      }
      m.insert(m.find_first_not_of('('), pins);
    }
    return out + m;
  }

  Sentence negate(Sentence const& s) {
    Sentence out = s;
    for (auto& b : out.prefix) {
      b.quantifier = b.quantifier == Quantifier::exists ? Quantifier::forall : Quantifier::exists;
    }
    out.matrix = negated(s.matrix);
    return out;
  }

  EANormal to_ea_normal(Sentence const& s, std::size_t clause_cap) {
    if (!is_exists_forall(pattern(s))) {
      throw DomainError("unsupported prefix: expected exists* forall*");
    }
    EANormal n;
    n.symbols = s.symbols;
    n.variable_count = s.variable_count;
    for (std::size_t v = 0; v < s.variable_count; ++v) {
      (s.quantifier_of(v) == Quantifier::exists ? n.exists_variables : n.forall_variables).push_back(v);
    }
    for (auto const& clause : cnf(s.matrix, clause_cap)) {
      Disjunct d;
      for (auto const& a : clause) {
        (a.equation ? d.equations : d.inequations).push_back(a.word);
      }
      n.disjuncts.push_back(std::move(d));
    }
    return n;
  }

  AbstractWitness witness_of_disjunct(Disjunct const& d,
                                      Alphabet const& symbols,
                                      std::span<std::size_t const> h_generators) {
    for (std::size_t g : h_generators) {
      if (g >= symbols.rank()) {
        throw InvalidInput("H generator outside the symbol alphabet");
      }
    }
    AbstractWitness w;
    w.g = Presentation{symbols, d.inequations};
    w.h_generators.assign(h_generators.begin(), h_generators.end());
    w.v = d.equations;
    return w;
  }

  std::vector<AbstractWitness> witnesses(EANormal const& n) {
    std::vector<std::size_t> h = n.exists_variables;
    for (std::size_t c = n.variable_count; c < n.symbols.rank(); ++c) {
      h.push_back(c);
    }
    std::vector<AbstractWitness> out;
    for (auto const& d : n.disjuncts) {
      out.push_back(witness_of_disjunct(d, n.symbols, h));
    }
    return out;
  }

  Classification classify(Sentence const& s) {
    Classification c;
    auto const p = pattern(s);
    c.one_quantifier = p.size() == 1;
    c.exists_forall = is_exists_forall(p);
    auto any_inequation = [](auto&& self, Formula const& f) -> bool {
      if (f.kind == Formula::Kind::atom) {
        return !f.atom.equation;
      }
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](Formula const& g) { return self(self, g); });
    };
    c.positive = !any_inequation(any_inequation, s.matrix);
    return c;
  }

  bool is_silly(Word const& w, std::size_t rank) {
    if (w.empty()) {
      return true;
    }
    std::int64_t g = 0;
    for (std::int64_t e : exponent_sums(w, rank)) {
      g = std::gcd(g, e);
    }
    return g == 1;
  }

  bool holds_in_finite(Sentence const& s,
                       FiniteGroup const& f,
                       std::span<std::size_t const> constants,
                       std::size_t budget) {
    if (constants.size() != s.constant_count()) {
      throw InvalidInput("expected " + std::to_string(s.constant_count()) + " constant values");
    }
    check_budget(f.order(), s.variable_count, budget);
    std::vector<std::size_t> values(s.symbols.rank(), 0);
    for (std::size_t i = 0; i < constants.size(); ++i) {
      if (constants[i] >= f.order()) {
        throw InvalidInput("constant value outside the group");
      }
      values[s.variable_count + i] = constants[i];
    }
    std::vector<Quantifier> quantifiers;
    for (std::size_t v = 0; v < s.variable_count; ++v) {
      quantifiers.push_back(s.quantifier_of(v));
    }
    auto rec = [&](auto&& self, std::size_t v) -> bool {
      if (v == s.variable_count) {
        return eval_formula(s.matrix, f, values);
      }
      bool const exists = quantifiers[v] == Quantifier::exists;
      for (std::size_t a = 0; a < f.order(); ++a) {
        values[v] = a;
        if (self(self, v + 1) == exists) {
          return exists;
        }
      }
      return !exists;
    };
    return rec(rec, 0);
  }

  bool realizes_positively_finite(AbstractWitness const& w,
                                  std::span<std::size_t const> iota,
                                  FiniteGroup const& f,
                                  std::size_t budget) {
    if (iota.size() != w.h_generators.size()) {
      throw InvalidInput("iota needs one value per H generator");
    }
    std::size_t const rank = w.g.alphabet.rank();
    std::vector<std::size_t> values(rank, 0);
    std::vector<bool> fixed(rank, false);
    for (std::size_t i = 0; i < iota.size(); ++i) {
      values[w.h_generators[i]] = iota[i];
      fixed[w.h_generators[i]] = true;
    }
    std::vector<std::size_t> free;
    for (std::size_t g = 0; g < rank; ++g) {
      if (!fixed[g]) {
        free.push_back(g);
      }
    }
    check_budget(f.order(), free.size(), budget);
    return for_each_assignment(values, free, f.order(), [&] {
      for (auto const& r : w.g.relators) {
        if (f.evaluate(r, values) != 0) {
          return true;
        }
      }
      return std::any_of(w.v.begin(), w.v.end(),
                         [&](Word const& v) { return f.evaluate(v, values) == 0; });
    });
  }

  bool witness_evaluation_finite(Sentence const& s,
                                 FiniteGroup const& f,
                                 std::span<std::size_t const> constants,
                                 std::size_t budget) {
    if (!is_exists_forall(pattern(s))) {
      Sentence const n = negate(s);
      if (!is_exists_forall(pattern(n))) {
        throw DomainError("witness evaluation needs an exists-forall sentence or its negation");
      }
      return !witness_evaluation_finite(n, f, constants, budget);
    }
    if (constants.size() != s.constant_count()) {
      throw InvalidInput("expected " + std::to_string(s.constant_count()) + " constant values");
    }
    check_budget(f.order(), s.variable_count, budget);
    EANormal const n = to_ea_normal(s);
    std::vector<AbstractWitness> const ws = witnesses(n);
    std::vector<std::size_t> values(s.symbols.rank(), 0);
    for (std::size_t i = 0; i < constants.size(); ++i) {
      values[s.variable_count + i] = constants[i];
    }
    std::vector<std::size_t> iota;
    bool found = false;
    for_each_assignment(values, n.exists_variables, f.order(), [&] {
      iota.clear();
      for (std::size_t v : n.exists_variables) {
        iota.push_back(values[v]);
      }
      for (std::size_t i = 0; i < constants.size(); ++i) {
        iota.push_back(constants[i]);
      }
      found = std::all_of(ws.begin(), ws.end(), [&](AbstractWitness const& w) {
        return realizes_positively_finite(w, iota, f, budget);
      });
      return !found;
    });
    return found;
  }

}  // namespace forge
