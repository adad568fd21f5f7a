#pragma once

// First-order group sentences, their exists-forall normal form, abstract
// witnesses, and brute-force evaluation over finite groups.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/finite_group.hpp"
#include "forge/presentation.hpp"
#include "forge/words.hpp"

namespace forge {

  enum class Quantifier { exists, forall };

  struct QuantifierBlock {
    Quantifier quantifier = Quantifier::exists;
    std::vector<std::string> variables;

    bool operator==(QuantifierBlock const&) const = default;
  };

  // word = 1 when equation, word != 1 otherwise.
  struct Atom {
    Word word;
    bool equation = true;

    bool operator==(Atom const&) const = default;
  };

  struct Formula {
    enum class Kind { atom, conjunction, disjunction };
    Kind kind = Kind::atom;
    Atom atom;
    std::vector<Formula> children;

    static Formula make_atom(Atom a);
    // Flattens children of the same kind; a single child is returned as is.
    static Formula make(Kind kind, std::vector<Formula> children);

    bool operator==(Formula const&) const = default;
  };

  // Words are over `symbols`: the bound variables in prefix order, then the
  // constants ("$name") in order of first use.
  struct Sentence {
    std::vector<QuantifierBlock> prefix;
    Formula matrix;
    Alphabet symbols;
    std::size_t variable_count = 0;

    [[nodiscard]] std::size_t constant_count() const noexcept {
      return symbols.rank() - variable_count;
    }
    [[nodiscard]] Quantifier quantifier_of(std::size_t variable) const;

    bool operator==(Sentence const&) const = default;
  };

  // Grammar: block+ matrix, block = ("E"|"A") ident+, matrix built from
  // atoms "u = v" / "u != v" with "&", "|" and parentheses. Words use
  // identifiers, $constants, "1", [u,v], (w), ^ with a signed integer and an
  // optional "*". Throws ParseError with the offending position.
  Sentence parse_sentence(std::string_view text);
  std::string to_string(Sentence const& s);
  std::string word_text(Word const& w, Alphabet const& symbols);

  // Prenex negation: quantifiers swapped, matrix negated by De Morgan.
  Sentence negate(Sentence const& s);

  struct Disjunct {
    std::vector<Word> equations;
    std::vector<Word> inequations;

    bool operator==(Disjunct const&) const = default;
  };

  struct EANormal {
    Alphabet symbols;
    std::size_t variable_count = 0;
    std::vector<std::size_t> exists_variables;
    std::vector<std::size_t> forall_variables;
    std::vector<Disjunct> disjuncts;
  };

  inline constexpr std::size_t default_cnf_clause_cap = 4096;

  // Requires an exists* forall* prefix (DomainError otherwise); the matrix
  // is put in conjunctive normal form by distribution, refusing with
  // BudgetExceeded beyond the clause cap.
  EANormal to_ea_normal(Sentence const& s, std::size_t clause_cap = default_cnf_clause_cap);

  // (G, H, V, j): G is generated by all symbols with the disjunct's
  // inequation words as relators, H is generated by h_generators
  // (existential variables and constants), V the equation words.
  struct AbstractWitness {
    Presentation g;
    std::vector<std::size_t> h_generators;
    std::vector<Word> v;

    [[nodiscard]] bool v_empty() const noexcept {
      return v.empty();
    }
    bool operator==(AbstractWitness const&) const = default;
  };

  struct RealizedWitness {
    AbstractWitness abstract;
    // One image per H generator, in the target group's alphabet.
    std::vector<Word> iota;

    bool operator==(RealizedWitness const&) const = default;
  };

  AbstractWitness witness_of_disjunct(Disjunct const& d,
                                      Alphabet const& symbols,
                                      std::span<std::size_t const> h_generators);
  std::vector<AbstractWitness> witnesses(EANormal const& n);

  struct Classification {
    bool positive = false;
    bool one_quantifier = false;
    bool exists_forall = false;
  };

  Classification classify(Sentence const& s);

  // Trivial, or the exponent sums have gcd 1.
  bool is_silly(Word const& w, std::size_t rank);

  inline constexpr std::size_t default_finite_budget = 10'000'000;

  // Exhaustive evaluation; constants[i] is the value of the i-th constant.
  bool holds_in_finite(Sentence const& s,
                       FiniteGroup const& f,
                       std::span<std::size_t const> constants = {},
                       std::size_t budget = default_finite_budget);

  // Every morphism G -> F extending iota kills some element of V.
  // iota[i] is the value of h_generators[i].
  bool realizes_positively_finite(AbstractWitness const& w,
                                  std::span<std::size_t const> iota,
                                  FiniteGroup const& f,
                                  std::size_t budget = default_finite_budget);

  // Truth through witnesses: some assignment of the existential variables
  // positively realizes every disjunct's witness. forall* exists* sentences
  // are evaluated through their negation.
  bool witness_evaluation_finite(Sentence const& s,
                                 FiniteGroup const& f,
                                 std::span<std::size_t const> constants = {},
                                 std::size_t budget = default_finite_budget);

}  // namespace forge
