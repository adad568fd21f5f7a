#include <gtest/gtest.h>

#include "forge/errors.hpp"
#include "forge/tower.hpp"
#include "generators.hpp"

namespace {

  using namespace forge;
  using forge::testing::Rng;
  using forge::testing::uniform;

  Word w(Tower const& t, char const* text) {
    return parse_word(text, t.alphabet());
  }

  TEST(Tower, Naming) {
    EXPECT_THROW(Tower::create(1), InvalidInput);
    EXPECT_EQ(Tower::create(2).alphabet().names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(Tower::create(4).alphabet().names(), (std::vector<std::string>{"s", "t", "x", "y"}));
    auto const t = Tower::create(3);
    EXPECT_EQ(t.size(), 1u);
    EXPECT_TRUE(t.top().cumulative.empty());
    EXPECT_FALSE(t.top().report.has_value());
    EXPECT_THROW(static_cast<void>(t.stage(1)), InvalidInput);
  }

  TEST(Tower, AbsorbStage) {
    auto const t0 = Tower::create(4);
    Word const s = w(t0, "s"), x = w(t0, "x"), y = w(t0, "y");
    auto const tuned = tune_absorption(s, x, y, t0.top().cumulative);
    std::vector<RelatorCertificate> certs{tuned.certificate};
    auto const t1 = t0.push_stage(certs, {Goal::absorb(s, x, y), Goal::inject(ball(4, 1))});
    ASSERT_EQ(t1.size(), 2u);
    auto const& st = t1.top();
    ASSERT_TRUE(st.report);
    EXPECT_TRUE(st.report->cprime_sixth);
    ASSERT_TRUE(st.injectivity_radius_lb);
    EXPECT_EQ(st.goals.size(), 2u);
    auto const& absorb = st.goals[0];
    EXPECT_EQ(absorb.status, GoalStatus::certified);
    ASSERT_TRUE(absorb.evidence.certificate);
    auto const c = t1.certificates_through(1)[*absorb.evidence.certificate];
    Word const diff = c.consequence.lhs * c.consequence.rhs.inverse();
    EXPECT_EQ(replay_trace(diff, absorb.evidence.trace, st.quotient()), Word());
    EXPECT_EQ(st.goals[1].status, GoalStatus::certified);
    // the base stage is untouched
    EXPECT_EQ(t0.size(), 1u);
    EXPECT_EQ(t1.stage(0), t0.stage(0));
  }

  TEST(Tower, SurviveAndDie) {
    auto const t0 = Tower::create(2);
    std::vector<Word> rel{w(t0, "(a2b2)11")};
    auto const t1 = t0.push_stage({}, {Goal::survive({w(t0, "a"), w(t0, "ab")}), Goal::survive({rel[0]})}, rel);
    EXPECT_EQ(t1.top().goals[0].status, GoalStatus::certified);
    EXPECT_EQ(t1.top().goals[1].status, GoalStatus::failed);
    EXPECT_EQ(replay_trace(rel[0], t1.top().goals[1].evidence.trace, t1.top().quotient()), Word());
  }

  TEST(Tower, UnsoundStageIsHeuristic) {
    auto const t0 = Tower::create(2);
    std::vector<Word> rel{w(t0, "abAB")};
    auto const t1 = t0.push_stage({}, {Goal::survive({w(t0, "a")}), Goal::inject(ball(2, 1))}, rel);
    EXPECT_TRUE(t1.top().heuristic);
    EXPECT_EQ(t1.top().goals[0].status, GoalStatus::heuristic);
    EXPECT_EQ(t1.top().goals[1].status, GoalStatus::heuristic);
  }

  TEST(Tower, EmptyPush) {
    auto const t0 = Tower::create(2);
    auto const t1 = t0.push_stage({}, {Goal::inject(ball(2, 2))});
    EXPECT_EQ(t1.size(), 2u);
    EXPECT_TRUE(t1.top().new_relators.empty());
    EXPECT_EQ(t1.top().cumulative, t0.top().cumulative);
    EXPECT_EQ(t1.top().goals[0].status, GoalStatus::certified);
    EXPECT_FALSE(t1.top().injectivity_radius_lb);
  }

  TEST(Tower, RejectsForeignWords) {
    auto const t0 = Tower::create(2);
    Word const big = Word::generator(3);
    EXPECT_THROW(static_cast<void>(t0.eval(big, 0)), InvalidInput);
    EXPECT_THROW(static_cast<void>(t0.push_stage({}, {Goal::survive({big})})), InvalidInput);
  }

  TEST(Tower, CheckHom) {
    auto const t0 = Tower::create(2);
    std::vector<Word> rel{w(t0, "(a2b2)5")};
    auto const t1 = t0.push_stage({}, {}, rel);
    Presentation const src = parse_presentation("gens: x y z\nrel: x2y2z2\n");
    std::vector<Word> good{w(t1, "a"), w(t1, "b"), w(t1, "(a2b2)2")};
    auto const ok = t1.check_hom(src, good, 1);
    ASSERT_TRUE(ok.ok());
    EXPECT_EQ(ok.morphism->images, good);
    std::vector<Word> bad{w(t1, "a"), w(t1, "b"), Word()};
    auto const no = t1.check_hom(src, bad, 1);
    EXPECT_FALSE(no.ok());
    EXPECT_EQ(no.failing_relators, std::vector<std::size_t>{0});
    std::vector<Word> two{w(t1, "a"), w(t1, "b")};
    EXPECT_THROW(static_cast<void>(t1.check_hom(src, two, 1)), InvalidInput);
  }

  TEST(Tower, FreeSourceAlwaysMaps) {
    Rng rng(601);
    auto const t0 = Tower::create(2);
    std::vector<Word> rel{w(t0, "(a2b2)5")};
    auto const t1 = t0.push_stage({}, {}, rel);
    Presentation const free{Alphabet::standard(3), {}};
    for (int i = 0; i < 50; ++i) {
      std::vector<Word> images;
      for (int k = 0; k < 3; ++k) {
        images.push_back(forge::testing::random_reduced(rng, 2, uniform(rng, 0, 10)));
      }
      EXPECT_TRUE(t1.check_hom(free, images, 1).ok());
    }
  }

  // G = <u, v>, H = <u>, V = {[v, u]}, iota(u) = x.
  RealizedWitness commuting_witness(Tower const& t) {
    AbstractWitness a{Presentation{Alphabet({"u", "v"}), {}}, {0}, {commutator(Word::generator(1), Word::generator(0))}};
    return RealizedWitness{a, {w(t, "x")}};
  }

  TEST(Ledger, PoisonAcceptedAndRejected) {
    auto const t0 = Tower::create(4);
    auto const rw = commuting_witness(t0);
    Presentation const& g = rw.abstract.g;
    auto const t1 = t0.ledger_update(rw, Decision::negative, Morphism{g, {w(t0, "x"), w(t0, "y")}, 0});
    ASSERT_EQ(t1.ledger().negative.size(), 1u);
    EXPECT_EQ(t1.ledger().negative[0].id, "W1");
    EXPECT_NE(t1.ledger().find("W1"), nullptr);

    EXPECT_THROW(t0.ledger_update(rw, Decision::negative, Morphism{g, {w(t0, "x"), w(t0, "x2")}, 0}),
                 InvalidInput);
    EXPECT_THROW(t0.ledger_update(rw, Decision::negative, Morphism{g, {w(t0, "y"), w(t0, "x")}, 0}),
                 InvalidInput);
    EXPECT_THROW(t0.ledger_update(rw, Decision::negative, Morphism{g, {w(t0, "x"), w(t0, "y")}, 1}),
                 InvalidInput);
    EXPECT_THROW(t0.ledger_update(rw, Decision::negative), InvalidInput);
    EXPECT_THROW(t0.ledger_update(rw, Decision::positive, Morphism{g, {w(t0, "x"), w(t0, "y")}, 0}),
                 InvalidInput);
    RealizedWitness short_iota = rw;
    short_iota.iota.clear();
    EXPECT_THROW(t0.ledger_update(short_iota, Decision::positive), InvalidInput);
  }

  TEST(Ledger, PositiveEntriesRecordSentences) {
    auto const t0 = Tower::create(4);
    auto const rw = commuting_witness(t0);
    auto const t1 = t0.ledger_update(rw, Decision::positive, std::nullopt, "E y A x ([x,y] = 1)");
    auto const t2 = t1.ledger_update(rw, Decision::positive, std::nullopt, "E y A x ([x,y] = 1)");
    EXPECT_EQ(t2.ledger().positive.size(), 2u);
    EXPECT_EQ(t2.ledger().satisfied_sentences, std::vector<std::string>{"E y A x ([x,y] = 1)"});
    EXPECT_EQ(t2.ledger().positive[1].id, "W2");
  }

  TEST(Ledger, PoisonPersistsThroughStages) {
    auto const t0 = Tower::create(4);
    auto const rw = commuting_witness(t0);
    Morphism const phi{rw.abstract.g, {w(t0, "x"), w(t0, "y")}, 0};
    auto const t1 = t0.ledger_update(rw, Decision::negative, phi);
    auto const tuned = tune_absorption(w(t1, "s"), w(t1, "x"), w(t1, "y"), t1.top().cumulative);
    std::vector<RelatorCertificate> certs{tuned.certificate};
    auto const t2 = t1.push_stage(certs, {});
    ASSERT_EQ(t2.top().goals.size(), 1u);
    auto const& g = t2.top().goals[0];
    EXPECT_EQ(g.kind, GoalKind::hom_preserve);
    EXPECT_EQ(g.witness_id, "W1");
    EXPECT_EQ(g.status, GoalStatus::certified);
    EXPECT_TRUE(t2.check_hom(phi.source, phi.images, 1).ok());

    // A stage that kills [y, x] breaks the poison.
    std::vector<Word> kill{w(t1, "xyXY")};
    auto const t3 = t1.push_stage({}, {Goal::hom_preserve("W1")}, kill);
    EXPECT_EQ(t3.top().goals.size(), 1u);
    EXPECT_EQ(t3.top().goals[0].status, GoalStatus::failed);
  }

  TEST(TowerProperties, TrivialityIsMonotone) {
    Rng rng(602);
    auto const t0 = Tower::create(2);
    std::vector<Word> r1{w(t0, "(a2b2)7")};
    std::vector<Word> r2{w(t0, "(ab3)9")};
    auto const t = t0.push_stage({}, {}, r1).push_stage({}, {}, r2);
    ASSERT_TRUE(t.top().report->cprime_sixth);
    int died = 0;
    for (int i = 0; i < 300; ++i) {
      RelatorSet const& cum = t.stage(uniform(rng, 1, 2)).cumulative;
      Word x = uniform(rng, 0, 1) ? forge::testing::random_kernel_element(rng, cum, uniform(rng, 1, 2), 3)
                                  : forge::testing::random_reduced(rng, 2, uniform(rng, 1, 12));
      bool before = false;
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto const v = t.eval(x, k);
        ASSERT_NE(v.status, Triviality::unknown);
        bool const now = v.status == Triviality::trivial;
        EXPECT_TRUE(!before || now) << to_string(x, t.alphabet()) << " at stage " << k;
        died += now && !before && k > 0;
        before = now;
      }
    }
    EXPECT_GT(died, 0);
  }

  // Once s is absorbed into <x, y> and t into <x, y>, every word in s and t
  // equals a word in x and y at the top stage.
  TEST(TowerProperties, AbsorptionComposes) {
    auto const t0 = Tower::create(4);
    Word const s = w(t0, "s"), t = w(t0, "t"), x = w(t0, "x"), y = w(t0, "y");
    auto const c1 = tune_absorption(s, x, y, t0.top().cumulative).certificate;
    std::vector<RelatorCertificate> one{c1};
    auto const t1 = t0.push_stage(one, {Goal::absorb(s, x, y)});
    auto const& spec1 = std::get<AbsorptionSpec>(c1.spec);
    TuneOptions o;
    o.p_floor = spec1.p + spec1.q + 1;
    o.lambda0 = Rational(1, 7);
    auto const c2 = tune_absorption(t, x, y, t1.top().cumulative, o).certificate;
    std::vector<RelatorCertificate> two{c2};
    auto const t2 = t1.push_stage(two, {Goal::absorb(t, x, y), Goal::absorb(s, x, y)});
    ASSERT_TRUE(t2.top().report->cprime_sixth);
    for (auto const& g : t2.top().goals) {
      EXPECT_EQ(g.status, GoalStatus::certified) << g.evidence.note;
    }
    Word const sx = c1.consequence.rhs, tx = c2.consequence.rhs;
    Rng rng(603);
    for (int i = 0; i < 30; ++i) {
      Word word, image;
      for (int k = 0; k < 4; ++k) {
        bool const pick_s = uniform(rng, 0, 1);
        int const e = uniform(rng, 0, 1) ? 1 : -1;
        word = word * (pick_s ? s : t).pow(e);
        image = image * (pick_s ? sx : tx).pow(e);
      }
      EXPECT_EQ(eq_in_quotient(word, image, t2.top().quotient()).status, Triviality::trivial);
    }
  }

}  // namespace
