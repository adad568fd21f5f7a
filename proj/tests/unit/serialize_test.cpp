#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "forge/errors.hpp"
#include "forge/serialize.hpp"
#include "generators.hpp"

namespace {

  using namespace forge;
  using forge::testing::Rng;
  using forge::testing::uniform;

  // Absorb s, then t over the first stage, with a poison in the ledger.
  Tower sample_tower() {
    auto t = Tower::create(4);
    Alphabet const& a = t.alphabet();
    Word const s = parse_word("s", a), tt = parse_word("t", a), x = parse_word("x", a), y = parse_word("y", a);
    AbstractWitness const aw{Presentation{Alphabet({"u", "v"}), {}}, {0},
                             {commutator(Word::generator(1), Word::generator(0))}};
    t = t.ledger_update(RealizedWitness{aw, {x}}, Decision::negative, Morphism{aw.g, {x, y}, 0});
    t = t.ledger_update(RealizedWitness{aw, {x}}, Decision::positive, std::nullopt, "E y A x ([x,y] = 1)");
    auto const c1 = tune_absorption(s, x, y, t.top().cumulative).certificate;
    std::vector<RelatorCertificate> one{c1};
    t = t.push_stage(one, {Goal::absorb(s, x, y), Goal::survive({x, y})});
    SclSpec const spec{tt, x, x, Rational(1), kappa_family(x, y, 1, 24), 11, Rational(1, 10)};
    std::vector<RelatorCertificate> two{scl_relator(spec, t.top().cumulative)};
    return t.push_stage(two, {Goal::scl_bound(tt, x, Rational(1, 10))});
  }

  TEST(Serialize, TowerRoundTripIsByteExact) {
    Tower const t = sample_tower();
    std::string const text = dump_tower(t);
    Tower const back = parse_tower(text);
    EXPECT_EQ(back, t);
    EXPECT_EQ(dump_tower(back), text);
    auto const j = Json::parse(text);
    EXPECT_EQ(j.at("schema"), "forge/1");
    EXPECT_EQ(j.at("stages").size(), 3u);
    EXPECT_EQ(back.top().goals.front().kind, GoalKind::scl_bound);
    EXPECT_EQ(back.top().goals.front().status, GoalStatus::certified);
    EXPECT_TRUE(back.stage(1).quotient().sound());
  }

  TEST(Serialize, SaveAndLoad) {
    Tower const t = sample_tower();
    auto const path = std::filesystem::temp_directory_path() / "forge_serialize_test.json";
    save_tower(t, path.string());
    EXPECT_EQ(load_tower(path.string()), t);
    std::filesystem::remove(path);
    EXPECT_THROW(load_tower(path.string()), InvalidInput);
  }

  TEST(Serialize, MalformedTowers) {
    std::string const text = dump_tower(sample_tower());
    EXPECT_THROW(parse_tower("{"), InvalidInput);
    EXPECT_THROW(parse_tower("{}"), InvalidInput);
    auto j = Json::parse(text);
    j["schema"] = "forge/0";
    EXPECT_THROW(tower_from_json(j), InvalidInput);
    j = Json::parse(text);
    j["stages"][1]["relators"][0] = "s q";
    EXPECT_THROW(tower_from_json(j), InvalidInput);
    j = Json::parse(text);
    j["stages"][1]["cumulative"] = Json::array();
    EXPECT_THROW(tower_from_json(j), InvalidInput);
    j = Json::parse(text);
    j["stages"][1]["goals"][0]["kind"] = "teleport";
    EXPECT_THROW(tower_from_json(j), InvalidInput);
  }

  TEST(Serialize, Scalars) {
    Alphabet const a = Alphabet::standard(3);
    for (char const* text : {"1", "abC", "a5B3"}) {
      Word const w = parse_word(text, a);
      EXPECT_EQ(word_from_json(to_json(w, a), a), w);
    }
    for (Rational const q : {Rational(0), Rational(1, 11), Rational(-7, 3)}) {
      EXPECT_EQ(rational_from_json(to_json(q)), q);
    }
    Presentation const p = parse_presentation("gens: a b\nrel: (a2b2)5\n");
    EXPECT_EQ(presentation_from_json(to_json(p)), p);
    EXPECT_EQ(alphabet_from_json(to_json(a)), a);
  }

  TEST(SerializeProperties, ReportsCertificatesAndGoalsRoundTrip) {
    Rng rng(801);
    Alphabet const a({"s", "t", "x", "y"});
    for (int i = 0; i < 200; ++i) {
      RelatorSet const r = forge::testing::random_relator_set(rng, 4, 3, 1, 14);
      Alphabet const& ra = r.alphabet();
      auto const rep = sc_report(r);
      auto const back = report_from_json(to_json(rep, ra), ra);
      EXPECT_EQ(to_json(back, ra), to_json(rep, ra));
      EXPECT_EQ(back.lambda, rep.lambda);
      EXPECT_EQ(back.delta, rep.delta);

      Word const gamma = forge::testing::random_cyclically_reduced(rng, 4, uniform(rng, 1, 4));
      Origin const o{uniform(rng, 0, 5), uniform(rng, 0, 9), uniform(rng, 0, 1) == 1};
      EXPECT_EQ(origin_from_json(to_json(o)), o);
      try {
        auto const c = absorption_relator(
            {gamma, parse_word("x", a), parse_word("y", a), uniform(rng, 1, 6), uniform(rng, 1, 4)}, RelatorSet(a, {}));
        auto const cb = certificate_from_json(to_json(c, a), a);
        EXPECT_EQ(cb, c);
      } catch (Error const&) {
      }
      Goal const g = Goal::survive({gamma, gamma.inverse()});
      EXPECT_EQ(goal_from_json(to_json(g, a), a), g);
    }
  }

}  // namespace
