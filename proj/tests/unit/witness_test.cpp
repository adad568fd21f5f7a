#include <gtest/gtest.h>

#include "forge/errors.hpp"
#include "forge/witness.hpp"
#include "generators.hpp"

namespace {

  using namespace forge;
  using forge::testing::Rng;
  using forge::testing::uniform;

  FiniteGroup group(char const* name) {
    for (auto& [n, g] : small_group_battery()) {
      if (n == name) {
        return g;
      }
    }
    throw std::logic_error("no such group");
  }

  TEST(ParseSentence, Examples) {
    auto const s = parse_sentence("E y A x ( [x,y] = 1 | x = 1 )");
    ASSERT_EQ(s.prefix.size(), 2u);
    EXPECT_EQ(s.prefix[0].quantifier, Quantifier::exists);
    EXPECT_EQ(s.prefix[0].variables, std::vector<std::string>{"y"});
    EXPECT_EQ(s.matrix.kind, Formula::Kind::disjunction);
    EXPECT_EQ(s.matrix.children.size(), 2u);
    EXPECT_EQ(s.symbols.names(), (std::vector<std::string>{"y", "x"}));
    Word const comm = commutator(Word::generator(1), Word::generator(0));
    EXPECT_EQ(s.matrix.children[0].atom.word, comm);

    auto const root = parse_sentence("A x E y ( y^5 = x )");
    EXPECT_EQ(root.matrix.kind, Formula::Kind::atom);
    EXPECT_TRUE(root.matrix.atom.equation);
    EXPECT_EQ(root.matrix.atom.word, Word::generator(1).pow(5) * Word::generator(0).inverse());
  }

  TEST(ParseSentence, Errors) {
    try {
      static_cast<void>(parse_sentence("E y ( x = 1 )"));
      FAIL();
    } catch (ParseError const& e) {
      EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
      EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parse_sentence("E y ((y = 1) & E x (x = 1))"), ParseError);
    EXPECT_THROW(parse_sentence("E y (y # 1)"), ParseError);
    EXPECT_THROW(parse_sentence("(x = 1)"), ParseError);
    EXPECT_THROW(parse_sentence("E y y (y = 1)"), ParseError);
    EXPECT_THROW(parse_sentence("E y (y = 1"), ParseError);
  }

  TEST(ParseSentence, ConstantsAndSugar) {
    auto const s = parse_sentence("E y (y * $c^-2 = 1) & ([y,$c]^2 != 1)");
    EXPECT_EQ(s.variable_count, 1u);
    EXPECT_EQ(s.constant_count(), 1u);
    EXPECT_EQ(s.symbols.name(1), "$c");
    EXPECT_EQ(s.matrix.kind, Formula::Kind::conjunction);
  }

  TEST(EANormal, SingleDisjunct) {
    auto const n = to_ea_normal(parse_sentence("E y A x (x y = 1 | [x,y] != 1)"));
    ASSERT_EQ(n.disjuncts.size(), 1u);
    EXPECT_EQ(n.disjuncts[0].equations.size(), 1u);
    EXPECT_EQ(n.disjuncts[0].inequations.size(), 1u);
    EXPECT_EQ(n.exists_variables, std::vector<std::size_t>{0});
    EXPECT_EQ(n.forall_variables, std::vector<std::size_t>{1});
  }

  TEST(EANormal, ConjunctionSplits) {
    auto const n = to_ea_normal(parse_sentence("E y A x (x y = 1) & (x = 1)"));
    EXPECT_EQ(n.disjuncts.size(), 2u);
  }

  TEST(EANormal, DistributesAndCaps) {
    auto const s = parse_sentence("E y A x ((x = 1 & y = 1) | (x y = 1 & y^2 = 1))");
    EXPECT_EQ(to_ea_normal(s).disjuncts.size(), 4u);
    EXPECT_THROW(to_ea_normal(s, 3), BudgetExceeded);
  }

  TEST(EANormal, RejectsForallExists) {
    EXPECT_THROW(to_ea_normal(parse_sentence("A x E y (y^2 = x)")), DomainError);
  }

  TEST(AbstractWitness, FromDisjunct) {
    auto const n = to_ea_normal(parse_sentence("E y A x (x y = 1 | [x,y] != 1)"));
    auto const ws = witnesses(n);
    ASSERT_EQ(ws.size(), 1u);
    EXPECT_EQ(ws[0].g.relators, n.disjuncts[0].inequations);
    EXPECT_EQ(ws[0].v, n.disjuncts[0].equations);
    EXPECT_EQ(ws[0].h_generators, std::vector<std::size_t>{0});
    EXPECT_EQ(ws[0].g.alphabet.rank(), 2u);

    auto const free = witnesses(to_ea_normal(parse_sentence("E y A x (x y = 1)")));
    EXPECT_TRUE(free[0].g.relators.empty());
    auto const no_v = witnesses(to_ea_normal(parse_sentence("E y A x (x y != 1)")));
    EXPECT_TRUE(no_v[0].v_empty());
  }

  TEST(Classify, Examples) {
    auto const c1 = classify(parse_sentence("A x E y (y^5 = x)"));
    EXPECT_TRUE(c1.positive);
    EXPECT_FALSE(c1.one_quantifier);
    EXPECT_FALSE(c1.exists_forall);
    EXPECT_FALSE(classify(parse_sentence("E y (y != 1)")).positive);
    auto const c3 = classify(parse_sentence("A x (x = 1)"));
    EXPECT_TRUE(c3.one_quantifier);
    EXPECT_TRUE(c3.exists_forall);
    EXPECT_TRUE(classify(parse_sentence("E y A x ([x,y] = 1)")).exists_forall);
  }

  TEST(Silly, Battery) {
    Alphabet const a({"x", "y"});
    std::vector<std::pair<char const*, bool>> const cases{
        {"1", true}, {"x", true}, {"x2", false}, {"x2y3", true}, {"xyXY", false}, {"xyXYx2y4", false}};
    for (auto const& [text, silly] : cases) {
      EXPECT_EQ(is_silly(parse_word(text, a), 2), silly) << text;
    }
  }

  TEST(HoldsInFinite, Examples) {
    auto const roots = parse_sentence("A x E y (y^2 = x)");
    EXPECT_TRUE(holds_in_finite(roots, group("Z3")));
    EXPECT_FALSE(holds_in_finite(roots, group("Z4")));
    EXPECT_TRUE(holds_in_finite(parse_sentence("A x (x = 1)"), group("1")));
    EXPECT_FALSE(holds_in_finite(parse_sentence("A x (x = 1)"), group("Z2")));
  }

  TEST(HoldsInFinite, ConstantsAndBudget) {
    auto const s = parse_sentence("E y (y^2 = $c)");
    std::vector<std::size_t> one{1}, two{2};
    EXPECT_FALSE(holds_in_finite(s, group("Z4"), one));
    EXPECT_TRUE(holds_in_finite(s, group("Z4"), two));
    EXPECT_THROW(static_cast<void>(holds_in_finite(s, group("Z4"))), InvalidInput);
    auto const big = parse_sentence("A x y z u v (x y z u v = 1)");
    EXPECT_THROW(static_cast<void>(holds_in_finite(big, group("S3"), {}, 100)), BudgetExceeded);
  }

  TEST(RealizesPositively, Examples) {
    Alphabet const a({"x"});
    AbstractWitness const killed{Presentation{a, {}}, {}, {Word()}};
    EXPECT_TRUE(realizes_positively_finite(killed, {}, group("Z2")));
    AbstractWitness const poisoned{Presentation{a, {}}, {}, {Word::generator(0)}};
    EXPECT_FALSE(realizes_positively_finite(poisoned, {}, group("Z2")));
    AbstractWitness const empty_v{Presentation{a, {}}, {}, {}};
    EXPECT_FALSE(realizes_positively_finite(empty_v, {}, group("1")));
    // Hom(G, F) extending iota is empty: vacuously realized.
    AbstractWitness const no_homs{Presentation{Alphabet({"y"}), {Word::generator(0)}}, {0}, {}};
    std::vector<std::size_t> iota{1};
    EXPECT_TRUE(realizes_positively_finite(no_homs, iota, group("Z2")));
  }

  std::vector<char const*> const ea_battery{
      "E y A x ([x,y] = 1)",
      "A x (x^2 = 1)",
      "E y A x (x y = y x) & (y != 1)",
      "E y A x (x = 1 | x^2 != 1 | x y x^-1 y^-1 = 1)",
      "E y z A x ([x,y] = 1 & [x,z] = 1 | y = z)",
      "E y A x ((x^3 = 1) & (y^2 != 1) | x = y)",
      "A x u (x u = u x)",
  };

  std::vector<char const*> const ae_battery{
      "A x E y (y^2 = x)",
      "A x E y (y^3 = x)",
      "A x E y (y^5 = x)",
      "A x E y (x y x^-1 = y^-1 & y != 1)",
  };

  TEST(WitnessEvaluation, AgreesWithDirectEvaluation) {
    for (auto const& [name, g] : small_group_battery()) {
      for (auto const* text : ea_battery) {
        auto const s = parse_sentence(text);
        EXPECT_EQ(holds_in_finite(s, g), witness_evaluation_finite(s, g)) << text << " in " << name;
      }
      for (auto const* text : ae_battery) {
        auto const s = parse_sentence(text);
        EXPECT_EQ(holds_in_finite(s, g), witness_evaluation_finite(s, g)) << text << " in " << name;
      }
    }
  }

  TEST(WitnessEvaluation, RootsByOrder) {
    auto const sq = parse_sentence("A x E y (y^2 = x)");
    auto const fifth = parse_sentence("A x E y (y^5 = x)");
    for (auto const& [name, g] : small_group_battery()) {
      bool const odd = g.order() % 2 == 1;
      EXPECT_EQ(holds_in_finite(sq, g), odd) << name;
      EXPECT_EQ(holds_in_finite(fifth, g), g.order() % 5 != 0) << name;
    }
  }

  // Random sentences from the concrete grammar.
  struct SentenceGen {
    Rng rng;

    std::string word(std::vector<std::string> const& vars, int depth) {
      std::string out;
      std::size_t const n = uniform(rng, 1, 3);
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
          out += uniform(rng, 0, 1) ? " * " : " ";
        }
        std::size_t const kind = uniform(rng, 0, depth > 0 ? 5 : 3);
        if (kind <= 1) {
          out += vars[uniform(rng, 0, vars.size() - 1)];
        } else if (kind == 2) {
          out += "$c";
        } else if (kind == 3) {
          out += "1";
        } else if (kind == 4) {
          out += "[" + word(vars, depth - 1) + "," + word(vars, depth - 1) + "]";
        } else {
          out += "(" + word(vars, depth - 1) + ")";
        }
        if (uniform(rng, 0, 2) == 0) {
          out += "^" + std::string(uniform(rng, 0, 1) ? "-" : "") + std::to_string(uniform(rng, 0, 4));
        }
      }
      return out;
    }

    std::string sentence() {
      std::vector<std::string> const pool{"x", "y", "z", "u", "v"};
      std::vector<std::string> vars;
      std::string out;
      std::size_t const blocks = uniform(rng, 1, 3);
      std::size_t next = 0;
      for (std::size_t b = 0; b < blocks && next < pool.size(); ++b) {
        out += uniform(rng, 0, 1) ? "E" : "A";
        std::size_t const k = uniform(rng, 1, 2);
        for (std::size_t i = 0; i < k && next < pool.size(); ++i) {
          out += " " + pool[next];
          vars.push_back(pool[next++]);
        }
        out += " ";
      }
      std::size_t const clauses = uniform(rng, 1, 3);
      for (std::size_t c = 0; c < clauses; ++c) {
        if (c > 0) {
          out += " & ";
        }
        out += "(";
        std::size_t const atoms = uniform(rng, 1, 3);
        for (std::size_t a = 0; a < atoms; ++a) {
          if (a > 0) {
            out += " | ";
          }
          out += word(vars, 2) + (uniform(rng, 0, 1) ? " = " : " != ") + "1";
        }
        out += ")";
      }
      return out;
    }
  };

  TEST(WitnessProperties, PrintParseRoundTrip) {
    SentenceGen gen{Rng(501)};
    for (int i = 0; i < 2000; ++i) {
      std::string const text = gen.sentence();
      Sentence const s = parse_sentence(text);
      std::string const printed = to_string(s);
      Sentence const back = parse_sentence(printed);
      ASSERT_EQ(back, s) << text << "\n" << printed;
      ASSERT_EQ(to_string(back), printed);
    }
  }

  Sentence rebuild(EANormal const& n) {
    Sentence s;
    s.symbols = n.symbols;
    s.variable_count = n.variable_count;
    auto names = [&](std::vector<std::size_t> const& vs) {
      std::vector<std::string> out;
      for (auto v : vs) {
        out.push_back(n.symbols.name(v));
      }
      return out;
    };
    if (!n.exists_variables.empty()) {
      s.prefix.push_back({Quantifier::exists, names(n.exists_variables)});
    }
    if (!n.forall_variables.empty()) {
      s.prefix.push_back({Quantifier::forall, names(n.forall_variables)});
    }
    std::vector<Formula> clauses;
    for (auto const& d : n.disjuncts) {
      std::vector<Formula> atoms;
      for (auto const& v : d.equations) {
        atoms.push_back(Formula::make_atom({v, true}));
      }
      for (auto const& w : d.inequations) {
        atoms.push_back(Formula::make_atom({w, false}));
      }
      clauses.push_back(Formula::make(Formula::Kind::disjunction, std::move(atoms)));
    }
    s.matrix = Formula::make(Formula::Kind::conjunction, std::move(clauses));
    return s;
  }

  TEST(WitnessProperties, NormalFormPreservesTruth) {
    SentenceGen gen{Rng(502)};
    auto const battery = small_group_battery();
    int checked = 0;
    for (int i = 0; i < 400 && checked < 150; ++i) {
      Sentence const s = parse_sentence(gen.sentence());
      if (!classify(s).exists_forall || s.variable_count > 3) {
        continue;
      }
      ++checked;
      Sentence const normal = rebuild(to_ea_normal(s));
      for (auto const& [name, g] : battery) {
        for (std::size_t c = 0; c < g.order(); ++c) {
          std::vector<std::size_t> consts(s.constant_count(), c);
          ASSERT_EQ(holds_in_finite(s, g, consts), holds_in_finite(normal, g, consts)) << to_string(s);
          ASSERT_EQ(holds_in_finite(s, g, consts), witness_evaluation_finite(s, g, consts)) << to_string(s);
        }
      }
    }
    EXPECT_GE(checked, 100);
  }

  TEST(WitnessProperties, PositiveMeansRelatorFree) {
    SentenceGen gen{Rng(503)};
    for (int i = 0; i < 500; ++i) {
      Sentence const s = parse_sentence(gen.sentence());
      if (!classify(s).exists_forall) {
        continue;
      }
      bool const positive = classify(s).positive;
      bool all_free = true;
      for (auto const& w : witnesses(to_ea_normal(s))) {
        all_free = all_free && w.g.relators.empty();
      }
      EXPECT_EQ(positive, all_free) << to_string(s);
    }
  }

  TEST(WitnessProperties, NegationSwapsTruth) {
    SentenceGen gen{Rng(504)};
    auto const s3 = group("S3");
    for (int i = 0; i < 200; ++i) {
      Sentence const s = parse_sentence(gen.sentence());
      if (s.variable_count > 3) {
        continue;
      }
      std::vector<std::size_t> consts(s.constant_count(), 1);
      EXPECT_NE(holds_in_finite(s, s3, consts), holds_in_finite(negate(s), s3, consts));
    }
  }

}  // namespace
