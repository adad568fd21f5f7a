#include "forge/serialize.hpp"

#include <fstream>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

  namespace {

    template <class T, class F>
    Json array_of(std::vector<T> const& items, F&& f) {
      Json out = Json::array();
      for (auto const& x : items) {
        out.push_back(f(x));
      }
      return out;
    }

    std::vector<Word> words_from(Json const& j, Alphabet const& a) {
      std::vector<Word> out;
      for (auto const& x : j) {
        out.push_back(word_from_json(x, a));
      }
      return out;
    }

    Json words_json(std::vector<Word> const& w, Alphabet const& a) {
      return array_of(w, [&](Word const& x) { return to_json(x, a); });
    }

    Json sizes_json(std::vector<std::size_t> const& v) {
      return array_of(v, [](std::size_t x) { return Json(x); });
    }

    std::vector<std::size_t> sizes_from(Json const& j) {
      return j.get<std::vector<std::size_t>>();
    }

    template <class T>
    Json optional_json(std::optional<T> const& v) {
      return v ? Json(*v) : Json(nullptr);
    }

    Json optional_rational(std::optional<Rational> const& v) {
      return v ? to_json(*v) : Json(nullptr);
    }

    std::optional<Rational> optional_rational_from(Json const& j) {
      if (j.is_null()) {
        return std::nullopt;
      }
      return rational_from_json(j);
    }

    Json relator_set_json(RelatorSet const& r) {
      return words_json(r.relators(), r.alphabet());
    }

    Json mpz_json(mpz_class const& z) {
      return z.get_str();
    }

    Json matrix_json(std::vector<std::vector<mpz_class>> const& m) {
      return array_of(m, [](std::vector<mpz_class> const& row) { return array_of(row, mpz_json); });
    }

    GoalKind goal_kind_from(std::string const& s) {
      for (auto k : {GoalKind::absorb, GoalKind::inject, GoalKind::survive, GoalKind::scl_bound,
                     GoalKind::hom_preserve}) {
        if (s == to_string(k)) {
          return k;
        }
      }
      throw InvalidInput("unknown goal kind '" + s + "'");
    }

    GoalStatus goal_status_from(std::string const& s) {
      for (auto k : {GoalStatus::pending, GoalStatus::certified, GoalStatus::failed, GoalStatus::heuristic}) {
        if (s == to_string(k)) {
          return k;
        }
      }
      throw InvalidInput("unknown goal status '" + s + "'");
    }

    Json morphism_json(Morphism const& m, Alphabet const& target) {
      Json j;
      j["source"] = to_json(m.source);
      j["images"] = words_json(m.images, target);
      j["target"] = m.target;
      return j;
    }

    Morphism morphism_from(Json const& j, Alphabet const& target) {
      return Morphism{presentation_from_json(j.at("source")), words_from(j.at("images"), target),
                      j.at("target").get<std::size_t>()};
    }

    Json entry_json(LedgerEntry const& e, Alphabet const& a) {
      AbstractWitness const& w = e.witness.abstract;
      Json j;
      j["id"] = e.id;
      j["decision"] = e.decision == Decision::positive ? "positive" : "negative";
      j["stage"] = e.stage;
      j["sentence"] = optional_json(e.sentence);
      Json wj;
      wj["g"] = to_json(w.g);
      wj["h_generators"] = sizes_json(w.h_generators);
      wj["v"] = words_json(w.v, w.g.alphabet);
      wj["iota"] = words_json(e.witness.iota, a);
      j["witness"] = std::move(wj);
      j["poison"] = e.poison ? morphism_json(*e.poison, a) : Json(nullptr);
      return j;
    }

    LedgerEntry entry_from(Json const& j, Alphabet const& a) {
      LedgerEntry e;
      e.id = j.at("id").get<std::string>();
      std::string const d = j.at("decision").get<std::string>();
      if (d != "positive" && d != "negative") {
        throw InvalidInput("unknown ledger decision '" + d + "'");
      }
      e.decision = d == "positive" ? Decision::positive : Decision::negative;
      e.stage = j.at("stage").get<std::size_t>();
      if (!j.at("sentence").is_null()) {
        e.sentence = j.at("sentence").get<std::string>();
      }
      Json const& wj = j.at("witness");
      AbstractWitness& w = e.witness.abstract;
      w.g = presentation_from_json(wj.at("g"));
      w.h_generators = sizes_from(wj.at("h_generators"));
      w.v = words_from(wj.at("v"), w.g.alphabet);
      e.witness.iota = words_from(wj.at("iota"), a);
      if (!j.at("poison").is_null()) {
        e.poison = morphism_from(j.at("poison"), a);
      }
      return e;
    }

  }  // namespace

  Json to_json(Word const& w, Alphabet const& a) {
    return to_string(w, a);
  }

  Word word_from_json(Json const& j, Alphabet const& a) {
    return parse_word(j.get<std::string>(), a);
  }

  Json to_json(Rational const& q) {
    return to_string(q);
  }

  Rational rational_from_json(Json const& j) {
    return parse_rational(j.get<std::string>());
  }

  Json to_json(Alphabet const& a) {
    return a.names();
  }

  Alphabet alphabet_from_json(Json const& j) {
    return Alphabet(j.get<std::vector<std::string>>());
  }

  Json to_json(Presentation const& p) {
    Json j;
    j["gens"] = to_json(p.alphabet);
    j["relators"] = words_json(p.relators, p.alphabet);
    return j;
  }

  Presentation presentation_from_json(Json const& j) {
    Presentation p;
    p.alphabet = alphabet_from_json(j.at("gens"));
    p.relators = words_from(j.at("relators"), p.alphabet);
    return p;
  }

  Json to_json(Origin const& o) {
    Json j;
    j["relator"] = o.relator;
    j["rotation"] = o.rotation;
    j["inverted"] = o.inverted;
    return j;
  }

  Origin origin_from_json(Json const& j) {
    return Origin{j.at("relator").get<std::size_t>(), j.at("rotation").get<std::size_t>(),
                  j.at("inverted").get<bool>()};
  }

  Json to_json(SCReport const& r, Alphabet const& a) {
    Json j;
    j["delta"] = r.delta;
    j["t"] = r.t;
    j["lambda"] = to_json(r.lambda);
    j["epsilon"] = to_json(r.epsilon);
    j["cprime_sixth"] = r.cprime_sixth;
    j["lambda0"] = to_json(r.lambda0);
    j["epsilon0"] = to_json(r.epsilon0);
    j["strengthened"] = r.strengthened;
    j["tight"] = r.tight;
    j["cprime_ratio"] = to_json(r.cprime_ratio);
    if (r.witness) {
      Json w;
      w["piece"] = to_json(r.witness->piece, a);
      w["first"] = to_json(r.witness->first);
      w["second"] = to_json(r.witness->second);
      j["witness"] = std::move(w);
    } else {
      j["witness"] = nullptr;
    }
    j["witness_stages"] = sizes_json(r.witness_stages);
    j["proper_powers"] = sizes_json(r.proper_powers);
    j["conjugate_pairs"] = array_of(r.conjugate_pairs, [](auto const& p) {
      return Json::array({p.first, p.second});
    });
    return j;
  }

  SCReport report_from_json(Json const& j, Alphabet const& a) {
    SCReport r;
    r.delta = j.at("delta").get<std::size_t>();
    r.t = j.at("t").get<std::size_t>();
    r.lambda = rational_from_json(j.at("lambda"));
    r.epsilon = rational_from_json(j.at("epsilon"));
    r.cprime_sixth = j.at("cprime_sixth").get<bool>();
    r.lambda0 = rational_from_json(j.at("lambda0"));
    r.epsilon0 = rational_from_json(j.at("epsilon0"));
    r.strengthened = j.at("strengthened").get<bool>();
    r.tight = j.at("tight").get<bool>();
    r.cprime_ratio = rational_from_json(j.at("cprime_ratio"));
    if (!j.at("witness").is_null()) {
      Json const& w = j.at("witness");
      r.witness = PieceWitness{word_from_json(w.at("piece"), a), origin_from_json(w.at("first")),
                               origin_from_json(w.at("second"))};
    }
    r.witness_stages = sizes_from(j.at("witness_stages"));
    r.proper_powers = sizes_from(j.at("proper_powers"));
    for (auto const& p : j.at("conjugate_pairs")) {
      r.conjugate_pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    }
    return r;
  }

  Json to_json(DehnStep const& s, Alphabet const& a) {
    Json j;
    j["position"] = s.position;
    j["origin"] = to_json(s.origin);
    j["removed"] = to_json(s.removed, a);
    j["inserted"] = to_json(s.inserted, a);
    return j;
  }

  DehnStep step_from_json(Json const& j, Alphabet const& a) {
    return DehnStep{j.at("position").get<std::size_t>(), origin_from_json(j.at("origin")),
                    word_from_json(j.at("removed"), a), word_from_json(j.at("inserted"), a)};
  }

  Json to_json(RelatorCertificate const& c, Alphabet const& a) {
    Json j;
    j["relator"] = to_json(c.relator, a);
    Json spec;
    if (auto const* s = std::get_if<AbsorptionSpec>(&c.spec)) {
      j["family"] = "absorption";
      spec["gamma"] = to_json(s->gamma, a);
      spec["x"] = to_json(s->x, a);
      spec["y"] = to_json(s->y, a);
      spec["p"] = s->p;
      spec["q"] = s->q;
    } else {
      auto const& t = std::get<SclSpec>(c.spec);
      j["family"] = "stable_norm";
      spec["gamma"] = to_json(t.gamma, a);
      spec["gamma1"] = to_json(t.gamma1, a);
      spec["alpha"] = to_json(t.alpha, a);
      spec["gamma1_bound"] = to_json(t.gamma1_bound);
      spec["kappas"] = words_json(t.kappas, a);
      spec["q"] = t.q;
      spec["sigma"] = to_json(t.sigma);
    }
    j["spec"] = std::move(spec);
    j["report"] = to_json(c.report, a);
    Json cq;
    cq["kind"] = c.consequence.kind == ConsequenceKind::absorption ? "absorption" : "stable_norm";
    cq["lhs"] = to_json(c.consequence.lhs, a);
    cq["rhs"] = to_json(c.consequence.rhs, a);
    cq["stable_bound"] = optional_rational(c.consequence.stable_bound);
    j["consequence"] = std::move(cq);
    return j;
  }

  RelatorCertificate certificate_from_json(Json const& j, Alphabet const& a) {
    RelatorCertificate c;
    c.relator = word_from_json(j.at("relator"), a);
    std::string const family = j.at("family").get<std::string>();
    Json const& spec = j.at("spec");
    if (family == "absorption") {
      c.spec = AbsorptionSpec{word_from_json(spec.at("gamma"), a), word_from_json(spec.at("x"), a),
                              word_from_json(spec.at("y"), a), spec.at("p").get<std::size_t>(),
                              spec.at("q").get<std::size_t>()};
    } else if (family == "stable_norm") {
      SclSpec s;
      s.gamma = word_from_json(spec.at("gamma"), a);
      s.gamma1 = word_from_json(spec.at("gamma1"), a);
      s.alpha = word_from_json(spec.at("alpha"), a);
      s.gamma1_bound = rational_from_json(spec.at("gamma1_bound"));
      s.kappas = words_from(spec.at("kappas"), a);
      s.q = spec.at("q").get<std::size_t>();
      s.sigma = rational_from_json(spec.at("sigma"));
      c.spec = std::move(s);
    } else {
      throw InvalidInput("unknown certificate family '" + family + "'");
    }
    c.report = report_from_json(j.at("report"), a);
    Json const& cq = j.at("consequence");
    std::string const kind = cq.at("kind").get<std::string>();
    if (kind != "absorption" && kind != "stable_norm") {
      throw InvalidInput("unknown consequence kind '" + kind + "'");
    }
    c.consequence.kind = kind == "absorption" ? ConsequenceKind::absorption : ConsequenceKind::stable_norm;
    c.consequence.lhs = word_from_json(cq.at("lhs"), a);
    c.consequence.rhs = word_from_json(cq.at("rhs"), a);
    c.consequence.stable_bound = optional_rational_from(cq.at("stable_bound"));
    return c;
  }

  Json to_json(TuneStep const& s) {
    Json j;
    j["p"] = s.p;
    j["q"] = s.q;
    j["m"] = s.m;
    j["delta"] = s.delta;
    j["t"] = s.t;
    j["lambda"] = to_json(s.lambda);
    j["success"] = s.success;
    return j;
  }

  Json to_json(TrivialityVerdict const& v, Alphabet const& a) {
    Json j;
    j["status"] = to_string(v.status);
    j["sound"] = v.sound;
    j["residue"] = to_json(v.residue, a);
    j["trace"] = array_of(v.trace, [&](DehnStep const& s) { return to_json(s, a); });
    return j;
  }

  Json to_json(InjectivityReport const& r, Alphabet const& a) {
    Json j;
    j["certified"] = r.certified;
    j["pairs"] = r.pairs;
    j["fast_path"] = r.fast_path;
    j["failures"] = array_of(r.failures, [&](auto const& p) {
      return Json::array({to_json(p.first, a), to_json(p.second, a)});
    });
    return j;
  }

  Json to_json(AbelianizationData const& d) {
    Json j;
    j["matrix"] = matrix_json(d.matrix);
    j["diagonal"] = array_of(d.diagonal, mpz_json);
    j["invariant_factors"] = array_of(d.invariant_factors(), mpz_json);
    j["free_rank"] = d.free_rank;
    return j;
  }

  Json to_json(NormCertificate const& c, Alphabet const& a) {
    Json j;
    j["element"] = to_json(c.element, a);
    j["kind"] = to_string(c.kind);
    j["parameter"] = to_json(c.parameter, a);
    j["bound"] = to_json(c.bound);
    j["power"] = c.power;
    j["expression"] = array_of(c.expression, [&](ExpressionFactor const& f) {
      Json x;
      x["conjugator"] = to_json(f.conjugator, a);
      x["base"] = to_json(f.base, a);
      return x;
    });
    j["stage"] = c.stage ? Json(*c.stage) : Json("free");
    return j;
  }

  Json to_json(NormResult const& r, Alphabet const& a) {
    Json j;
    j["status"] = to_string(r.status);
    j["certificate"] = r.certificate && r.status == NormStatus::certified ? to_json(*r.certificate, a)
                                                                          : Json(nullptr);
    return j;
  }

  Json to_json(EpimorphismReport const& r) {
    Alphabet const& a = r.target.alphabet;
    Json j;
    j["n"] = r.n;
    j["source"] = to_json(r.source);
    j["target"] = to_json(r.target);
    j["report"] = to_json(r.report, a);
    j["reference_delta"] = r.reference.delta;
    j["images"] = words_json(r.images, a);
    j["relator_image"] = to_json(r.relator_image, a);
    j["image_verdict"] = to_json(r.image_verdict, a);
    j["hom_verified"] = r.hom_verified;
    j["surjective"] = r.surjective;
    j["source_abelianization"] = to_json(r.source_abelianization);
    j["target_abelianization"] = to_json(r.target_abelianization);
    j["noncyclic_image"] = r.noncyclic_image;
    j["all_checks_pass"] = r.all_checks_pass();
    return j;
  }

  Json to_json(Goal const& g, Alphabet const& a) {
    Json j;
    j["kind"] = to_string(g.kind);
    j["status"] = to_string(g.status);
    j["target"] = to_json(g.target, a);
    j["alpha"] = to_json(g.alpha, a);
    j["words"] = words_json(g.words, a);
    j["sigma"] = to_json(g.sigma);
    j["witness_id"] = g.witness_id;
    Json e;
    e["note"] = g.evidence.note;
    e["certificate"] = optional_json(g.evidence.certificate);
    e["trace"] = array_of(g.evidence.trace, [&](DehnStep const& s) { return to_json(s, a); });
    e["bound"] = optional_rational(g.evidence.bound);
    j["evidence"] = std::move(e);
    return j;
  }

  Goal goal_from_json(Json const& j, Alphabet const& a) {
    Goal g;
    g.kind = goal_kind_from(j.at("kind").get<std::string>());
    g.status = goal_status_from(j.at("status").get<std::string>());
    g.target = word_from_json(j.at("target"), a);
    g.alpha = word_from_json(j.at("alpha"), a);
    g.words = words_from(j.at("words"), a);
    g.sigma = rational_from_json(j.at("sigma"));
    g.witness_id = j.at("witness_id").get<std::string>();
    Json const& e = j.at("evidence");
    g.evidence.note = e.at("note").get<std::string>();
    if (!e.at("certificate").is_null()) {
      g.evidence.certificate = e.at("certificate").get<std::size_t>();
    }
    for (auto const& s : e.at("trace")) {
      g.evidence.trace.push_back(step_from_json(s, a));
    }
    g.evidence.bound = optional_rational_from(e.at("bound"));
    return g;
  }

  Json to_json(Tower const& t) {
    Alphabet const& a = t.alphabet();
    Json j;
    j["schema"] = json_schema;
    j["alphabet"] = to_json(a);
    Json stages = Json::array();
    for (auto const& s : t.stages()) {
      Json js;
      js["index"] = s.index;
      js["relators"] = relator_set_json(s.new_relators);
      js["cumulative"] = relator_set_json(s.cumulative);
      js["report"] = s.report ? to_json(*s.report, a) : Json(nullptr);
      js["heuristic"] = s.heuristic;
      js["injectivity_radius_lb"] = optional_json(s.injectivity_radius_lb);
      js["goals"] = array_of(s.goals, [&](Goal const& g) { return to_json(g, a); });
      js["certificates"] = array_of(s.certificates, [&](RelatorCertificate const& c) { return to_json(c, a); });
      stages.push_back(std::move(js));
    }
    j["stages"] = std::move(stages);
    Ledger const& l = t.ledger();
    Json lj;
    lj["positive"] = array_of(l.positive, [&](LedgerEntry const& e) { return entry_json(e, a); });
    lj["negative"] = array_of(l.negative, [&](LedgerEntry const& e) { return entry_json(e, a); });
    lj["satisfied_sentences"] = l.satisfied_sentences;
    j["ledger"] = std::move(lj);
    return j;
  }

  Tower tower_from_json(Json const& j) {
    try {
      if (j.at("schema").get<std::string>() != json_schema) {
        throw InvalidInput("unsupported tower schema '" + j.at("schema").get<std::string>() + "'");
      }
      Alphabet const a = alphabet_from_json(j.at("alphabet"));
      std::vector<Stage> stages;
      for (auto const& js : j.at("stages")) {
        Stage s;
        s.index = js.at("index").get<std::size_t>();
        s.new_relators = RelatorSet(a, words_from(js.at("relators"), a));
        s.cumulative = RelatorSet(a, words_from(js.at("cumulative"), a));
        if (!js.at("report").is_null()) {
          s.report = report_from_json(js.at("report"), a);
        }
        s.heuristic = js.at("heuristic").get<bool>();
        if (!js.at("injectivity_radius_lb").is_null()) {
          s.injectivity_radius_lb = js.at("injectivity_radius_lb").get<std::size_t>();
        }
        for (auto const& g : js.at("goals")) {
          s.goals.push_back(goal_from_json(g, a));
        }
        for (auto const& c : js.at("certificates")) {
          s.certificates.push_back(certificate_from_json(c, a));
        }
        stages.push_back(std::move(s));
      }
      Ledger l;
      Json const& lj = j.at("ledger");
      for (auto const& e : lj.at("positive")) {
        l.positive.push_back(entry_from(e, a));
      }
      for (auto const& e : lj.at("negative")) {
        l.negative.push_back(entry_from(e, a));
      }
      l.satisfied_sentences = lj.at("satisfied_sentences").get<std::vector<std::string>>();
      return Tower::from_parts(a, std::move(stages), std::move(l));
    } catch (nlohmann::json::exception const& e) {
      throw InvalidInput(std::string("malformed tower file: ") + e.what());
    } catch (ParseError const& e) {
      throw InvalidInput(std::string("malformed word in tower file: ") + e.what());
    }
  }

  std::string dump_tower(Tower const& t) {
    return to_json(t).dump(2) + "\n";
  }

  Tower parse_tower(std::string_view text) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (nlohmann::json::exception const& e) {
      throw InvalidInput(std::string("tower file is not JSON: ") + e.what());
    }
    return tower_from_json(j);
  }

  Tower load_tower(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput("cannot open tower file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tower(buf.str());
  }

  void save_tower(Tower const& t, std::string const& path) {
    std::ofstream out(path);
    if (!out) {
      throw InvalidInput("cannot write tower file '" + path + "'");
    }
    out << dump_tower(t);
    if (!out) {
      throw InvalidInput("failed writing tower file '" + path + "'");
    }
  }

}  // namespace forge
