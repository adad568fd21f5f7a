// forge: command-line front end.
//
// Exit codes: 0 success or positive verdict, 1 negative verdict, 2 unknown,
// 64 usage error (bad flags, unreadable or malformed input).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forge/forge.hpp"

namespace {

  using namespace forge;

  constexpr int exit_ok = 0;
  constexpr int exit_negative = 1;
  constexpr int exit_unknown = 2;
  constexpr int exit_usage = 64;

  struct Options {
    bool json = false;
  };

  void emit(Options const& o, std::string const& command, Json body, std::string const& human) {
    if (o.json) {
      Json out;
      out["schema"] = json_schema;
      out["command"] = command;
      for (auto& [k, v] : body.items()) {
        out[k] = v;
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << human;
    }
  }

  int verdict_code(Triviality t) {
    switch (t) {
      case Triviality::trivial: return exit_ok;
      case Triviality::nontrivial: return exit_negative;
      case Triviality::unknown: return exit_unknown;
    }
    return exit_unknown;
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidInput("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  Alphabet alphabet_from_list(std::string const& gens) {
    std::istringstream in(gens);
    std::vector<std::string> names;
    for (std::string n; in >> n;) {
      names.push_back(n);
    }
    return Alphabet(names);
  }

  std::string report_text(SCReport const& r, Alphabet const& a) {
    std::ostringstream out;
    out << "Delta = " << r.delta << "\n"
        << "T = " << r.t << "\n"
        << "lambda = " << to_string(r.lambda) << "\n"
        << "epsilon = " << to_string(r.epsilon) << "\n"
        << "C'(1/6): " << (r.cprime_sixth ? "yes" : "no") << "\n"
        << "C''(" << to_string(r.lambda0) << ", " << to_string(r.epsilon0)
        << "): " << (r.strengthened ? "yes" : "no") << "\n"
        << "tight: " << (r.tight ? "yes" : "no") << "\n";
    if (r.witness) {
      out << "longest piece: " << to_string(r.witness->piece, a) << "\n";
    }
    if (!r.proper_powers.empty()) {
      out << "proper powers:";
      for (auto i : r.proper_powers) {
        out << " " << i;
      }
      out << "\n";
    }
    return out.str();
  }

  std::string trace_text(std::vector<DehnStep> const& trace, Alphabet const& a) {
    std::ostringstream out;
    for (auto const& s : trace) {
      out << "  at " << s.position << ": " << to_string(s.removed, a) << " -> "
          << to_string(s.inserted.inverse(), a) << "\n";
    }
    return out.str();
  }

  std::pair<std::size_t, std::size_t> parse_budget(std::string const& text) {
    auto const comma = text.find(',');
    if (comma == std::string::npos) {
      throw InvalidInput("budget must be F,C");
    }
    try {
      return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
    } catch (std::exception const&) {
      throw InvalidInput("budget must be two nonnegative integers F,C");
    }
  }

  // A tower file is JSON; anything else is read as a presentation.
  struct Quotient {
    std::optional<Tower> tower;
    std::optional<Presentation> presentation;
    std::optional<std::size_t> stage;

    [[nodiscard]] Alphabet const& alphabet() const {
      return tower ? tower->alphabet() : presentation->alphabet;
    }
    [[nodiscard]] QuotientHandle handle() const {
      if (tower) {
        return tower->stage(*stage).quotient();
      }
      return QuotientHandle(*presentation);
    }
  };

  Quotient load_quotient(std::string const& path, std::optional<std::size_t> stage) {
    std::string const text = read_file(path);
    Quotient q;
    auto const first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      q.tower = parse_tower(text);
      q.stage = stage.value_or(q.tower->size() - 1);
      static_cast<void>(q.tower->stage(*q.stage));
    } else {
      q.presentation = parse_presentation(text);
    }
    return q;
  }

  RelatorSet ambient_set(std::optional<std::string> const& path, Alphabet const& a) {
    if (!path) {
      return RelatorSet(a, {});
    }
    RelatorSet r = load_presentation(*path).relator_set();
    if (!(r.alphabet() == a)) {
      throw InvalidInput("ambient presentation uses a different alphabet");
    }
    return r;
  }

  std::string certificate_text(RelatorCertificate const& c, Alphabet const& a) {
    std::ostringstream out;
    out << "relator: " << to_string(c.relator, a) << " (length " << c.relator.size() << ")\n";
    if (auto const* s = std::get_if<AbsorptionSpec>(&c.spec)) {
      out << "p = " << s->p << ", q = " << s->q << "\n";
    } else {
      auto const& t = std::get<SclSpec>(c.spec);
      out << "p = " << t.p() << ", q = " << t.q << ", stable bound = " << to_string(t.stable_bound())
          << " (sigma " << to_string(t.sigma) << ")\n";
    }
    out << report_text(c.report, a);
    out << "consequence: " << to_string(c.consequence.lhs, a) << " = " << to_string(c.consequence.rhs, a)
        << "\n"
        << "identity: " << (consequence_identity_holds(c) ? "holds" : "FAILS") << "\n";
    return out.str();
  }

  Json history_json(std::vector<TuneStep> const& h) {
    Json out = Json::array();
    for (auto const& s : h) {
      out.push_back(to_json(s));
    }
    return out;
  }

  std::string history_text(std::vector<TuneStep> const& h) {
    std::ostringstream out;
    for (auto const& s : h) {
      out << "  p=" << s.p << " q=" << s.q;
      if (s.m != 0) {
        out << " m=" << s.m;
      }
      out << " Delta=" << s.delta << " T=" << s.t << " lambda=" << to_string(s.lambda)
          << (s.success ? " ok" : "") << "\n";
    }
    return out.str();
  }

  // Smallest p keeping a new absorption relator's y-exponents above every
  // absorption relator already in the tower.
  std::size_t disjoint_floor(Tower const& t) {
    std::size_t floor = 0;
    for (auto const& c : t.certificates_through(t.size() - 1)) {
      if (auto const* s = std::get_if<AbsorptionSpec>(&c.spec)) {
        floor = std::max(floor, s->p + s->q + 1);
      }
    }
    return floor;
  }

  std::string tower_status_text(Tower const& t) {
    std::ostringstream out;
    Alphabet const& a = t.alphabet();
    out << "generators:";
    for (auto const& n : a.names()) {
      out << " " << n;
    }
    out << "\n";
    for (auto const& s : t.stages()) {
      out << "stage " << s.index << ": " << s.new_relators.size() << " new, " << s.cumulative.size()
          << " cumulative relators";
      if (s.report) {
        out << ", Delta=" << s.report->delta << " T=" << s.report->t
            << " lambda=" << to_string(s.report->lambda);
      }
      if (s.injectivity_radius_lb) {
        out << ", injectivity radius >= " << *s.injectivity_radius_lb;
      }
      out << (s.heuristic ? " [heuristic]" : "") << "\n";
      for (auto const& g : s.goals) {
        out << "  " << to_string(g.kind) << ": " << to_string(g.status);
        if (!g.evidence.note.empty()) {
          out << " (" << g.evidence.note << ")";
        }
        out << "\n";
      }
    }
    out << "ledger: " << t.ledger().positive.size() << " positive, " << t.ledger().negative.size()
        << " negative\n";
    return out.str();
  }

  int goals_code(Stage const& s) {
    bool heuristic = false;
    for (auto const& g : s.goals) {
      if (g.status == GoalStatus::failed) {
        return exit_negative;
      }
      heuristic = heuristic || g.status != GoalStatus::certified;
    }
    return heuristic ? exit_unknown : exit_ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: small-cancellation quotients of free groups"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");

  int code = exit_ok;

  // check-sc
  auto* check = app.add_subcommand("check-sc", "Piece analysis and small-cancellation verdicts");
  std::string check_file;
  std::optional<std::string> check_lambda, check_epsilon;
  bool check_reference = false;
  check->add_option("file", check_file, "Presentation file")->required();
  check->add_option("--lambda", check_lambda, "Target lambda0 as N/D");
  check->add_option("--epsilon", check_epsilon, "Target epsilon0 as N/D");
  check->add_flag("--reference", check_reference, "Cross-check with the quadratic piece scan");
  check->add_flag("--json", opt.json, "Machine-readable output");
  check->callback([&] {
    Presentation const p = load_presentation(check_file);
    RelatorSet const r = p.relator_set();
    Rational const l0 = check_lambda ? parse_rational(*check_lambda) : default_lambda0;
    Rational const e0 = check_epsilon ? parse_rational(*check_epsilon) : default_epsilon0;
    SCReport const rep = sc_report(r, l0, e0);
    Json body;
    body["report"] = to_json(rep, p.alphabet);
    std::string human = report_text(rep, p.alphabet);
    if (check_reference) {
      auto const ref = max_piece_reference(symmetrize(r));
      body["reference_delta"] = ref.delta;
      human += "reference Delta = " + std::to_string(ref.delta) + "\n";
    }
    emit(opt, "check-sc", body, human);
    bool const verdict = check_lambda || check_epsilon ? rep.strengthened : rep.cprime_sixth;
    code = verdict ? exit_ok : exit_negative;
  });

  // dehn
  auto* dehn = app.add_subcommand("dehn", "Decide triviality by Dehn's algorithm");
  std::string dehn_file, dehn_word;
  dehn->add_option("file", dehn_file, "Presentation file")->required();
  dehn->add_option("--word", dehn_word, "Word to test")->required();
  bool dehn_trace = false;
  dehn->add_flag("--trace", dehn_trace, "Print every reduction step");
  dehn->add_flag("--json", opt.json, "Machine-readable output");
  dehn->callback([&] {
    Presentation const p = load_presentation(dehn_file);
    QuotientHandle const q(p);
    Word const w = parse_word(dehn_word, p.alphabet);
    auto const v = is_trivial(w, q);
    Json body;
    body["word"] = to_json(w, p.alphabet);
    body["verdict"] = to_json(v, p.alphabet);
    std::string human = std::string(to_string(v.status)) + (v.sound ? "" : " (unsound presentation)") + "\n";
    if (dehn_trace) {
      human += trace_text(v.trace, p.alphabet);
    }
    if (v.status != Triviality::trivial) {
      human += "residue: " + to_string(v.residue, p.alphabet) + "\n";
    }
    emit(opt, "dehn", body, human);
    code = verdict_code(v.status);
  });

  // eq
  auto* eq = app.add_subcommand("eq", "Equality of two words in the quotient");
  std::string eq_file, eq_lhs, eq_rhs;
  eq->add_option("file", eq_file, "Presentation file")->required();
  eq->add_option("--lhs", eq_lhs, "Left word")->required();
  eq->add_option("--rhs", eq_rhs, "Right word")->required();
  eq->add_flag("--json", opt.json, "Machine-readable output");
  eq->callback([&] {
    Presentation const p = load_presentation(eq_file);
    QuotientHandle const q(p);
    auto const v = eq_in_quotient(parse_word(eq_lhs, p.alphabet), parse_word(eq_rhs, p.alphabet), q);
    Json body;
    body["verdict"] = to_json(v, p.alphabet);
    char const* text = v.status == Triviality::trivial      ? "equal"
                       : v.status == Triviality::nontrivial ? "different"
                                                            : "unknown";
    emit(opt, "eq", body, std::string(text) + "\n" + trace_text(v.trace, p.alphabet));
    code = verdict_code(v.status);
  });

  // inject
  auto* inject = app.add_subcommand("inject", "Injectivity certificate on a finite word set");
  std::string inject_file;
  std::optional<std::size_t> inject_ball;
  std::vector<std::string> inject_words;
  inject->add_option("file", inject_file, "Presentation file")->required();
  inject->add_option("--radius,--ball", inject_ball, "Use the ball of this radius");
  inject->add_option("--word", inject_words, "Word of the set (repeatable)");
  inject->add_flag("--json", opt.json, "Machine-readable output");
  inject->callback([&] {
    Presentation const p = load_presentation(inject_file);
    QuotientHandle const q(p);
    std::vector<Word> u;
    if (inject_ball) {
      u = ball(p.alphabet.rank(), *inject_ball);
    }
    for (auto const& w : inject_words) {
      u.push_back(parse_word(w, p.alphabet));
    }
    if (u.empty()) {
      throw InvalidInput("inject needs --radius or --word");
    }
    if (!q.sound()) {
      emit(opt, "inject", Json{{"certified", nullptr}, {"reason", "presentation is not C'(1/6)"}},
           "unknown: presentation is not C'(1/6)\n");
      code = exit_unknown;
      return;
    }
    auto const r = injectivity_certificate(u, q);
    std::ostringstream human;
    human << (r.certified ? "injective" : "not injective") << " on " << u.size() << " words (" << r.pairs
          << " pairs, " << r.fast_path << " by the length bound)\n";
    for (auto const& [a, b] : r.failures) {
      human << "  " << to_string(a, p.alphabet) << " = " << to_string(b, p.alphabet) << "\n";
    }
    emit(opt, "inject", Json{{"report", to_json(r, p.alphabet)}}, human.str());
    code = r.certified ? exit_ok : exit_negative;
  });

  // gen-absorb
  auto* absorb = app.add_subcommand("gen-absorb", "Build or tune an absorption relator");
  std::string ab_gens = "s t x y", ab_gamma, ab_x = "x", ab_y = "y";
  std::optional<std::size_t> ab_p, ab_q;
  std::size_t ab_floor = 0;
  std::string ab_lambda = "1/12", ab_epsilon = "1/50";
  std::optional<std::string> ab_ambient;
  absorb->add_option("--gens", ab_gens, "Generator names")->capture_default_str();
  absorb->add_option("--gamma", ab_gamma, "Element to absorb")->required();
  absorb->add_option("--x", ab_x, "First subgroup generator")->capture_default_str();
  absorb->add_option("--y", ab_y, "Second subgroup generator")->capture_default_str();
  absorb->add_option("--p", ab_p, "Fixed p (with --q); tunes otherwise");
  absorb->add_option("--q", ab_q, "Fixed q (with --p)");
  absorb->add_option("--p-floor", ab_floor, "Lower bound on p while tuning");
  absorb->add_option("--lambda", ab_lambda, "Target lambda0")->capture_default_str();
  absorb->add_option("--epsilon", ab_epsilon, "Target epsilon0")->capture_default_str();
  absorb->add_option("--ambient", ab_ambient, "Presentation already in force");
  absorb->add_flag("--json", opt.json, "Machine-readable output");
  absorb->callback([&] {
    Alphabet const a = alphabet_from_list(ab_gens);
    RelatorSet const ambient = ambient_set(ab_ambient, a);
    Word const gamma = parse_word(ab_gamma, a), x = parse_word(ab_x, a), y = parse_word(ab_y, a);
    Rational const l0 = parse_rational(ab_lambda), e0 = parse_rational(ab_epsilon);
    if (ab_p.has_value() != ab_q.has_value()) {
      throw InvalidInput("--p and --q go together");
    }
    if (ab_p) {
      auto const c = absorption_relator({gamma, x, y, *ab_p, *ab_q}, ambient, l0, e0);
      emit(opt, "gen-absorb", Json{{"certificate", to_json(c, a)}}, certificate_text(c, a));
      code = c.report.strengthened ? exit_ok : exit_negative;
      return;
    }
    TuneOptions o;
    o.lambda0 = l0;
    o.epsilon0 = e0;
    o.p_floor = ab_floor;
    try {
      auto const r = tune_absorption(gamma, x, y, ambient, o);
      emit(opt, "gen-absorb", Json{{"certificate", to_json(r.certificate, a)}, {"history", history_json(r.history)}},
           certificate_text(r.certificate, a) + "tuning:\n" + history_text(r.history));
    } catch (TuningFailed const& e) {
      emit(opt, "gen-absorb", Json{{"error", e.what()}, {"history", history_json(e.history())}},
           std::string("tuning failed: ") + e.what() + "\n" + history_text(e.history()));
      code = exit_negative;
    }
  });

  // gen-scl
  auto* scl = app.add_subcommand("gen-scl", "Build or tune a norm-stabilization relator");
  std::string sc_gens = "s t x y", sc_gamma, sc_gamma1, sc_alpha, sc_x = "x", sc_y = "y";
  std::string sc_bound = "1", sc_sigma, sc_lambda = "1/12", sc_epsilon = "1/50";
  std::optional<std::size_t> sc_q;
  std::size_t sc_p = 1, sc_m = 24;
  std::optional<std::string> sc_ambient;
  scl->add_option("--gens", sc_gens, "Generator names")->capture_default_str();
  scl->add_option("--gamma", sc_gamma, "Element whose stable norm is bounded")->required();
  scl->add_option("--gamma1", sc_gamma1, "Short element conjugated into the product")->required();
  scl->add_option("--alpha", sc_alpha, "Norm generator alpha")->required();
  scl->add_option("--L", sc_bound, "Known bound ell_alpha(gamma1) <= L")->capture_default_str();
  scl->add_option("--sigma", sc_sigma, "Target stable bound")->required();
  scl->add_option("--x", sc_x, "kappa letter x")->capture_default_str();
  scl->add_option("--y", sc_y, "kappa letter y")->capture_default_str();
  scl->add_option("--p", sc_p, "Number of kappas")->capture_default_str();
  scl->add_option("--q", sc_q, "Fixed q; tunes otherwise");
  scl->add_option("--m", sc_m, "Base kappa exponent")->capture_default_str();
  scl->add_option("--lambda", sc_lambda, "Target lambda0")->capture_default_str();
  scl->add_option("--epsilon", sc_epsilon, "Target epsilon0")->capture_default_str();
  scl->add_option("--ambient", sc_ambient, "Presentation already in force");
  scl->add_flag("--json", opt.json, "Machine-readable output");
  scl->callback([&] {
    Alphabet const a = alphabet_from_list(sc_gens);
    RelatorSet const ambient = ambient_set(sc_ambient, a);
    Word const gamma = parse_word(sc_gamma, a), gamma1 = parse_word(sc_gamma1, a),
               alpha = parse_word(sc_alpha, a), x = parse_word(sc_x, a), y = parse_word(sc_y, a);
    Rational const l = parse_rational(sc_bound), sigma = parse_rational(sc_sigma);
    Rational const l0 = parse_rational(sc_lambda), e0 = parse_rational(sc_epsilon);
    if (sc_q) {
      SclSpec spec{gamma, gamma1, alpha, l, kappa_family(x, y, sc_p, sc_m), *sc_q, sigma};
      auto const c = scl_relator(spec, ambient, l0, e0);
      emit(opt, "gen-scl", Json{{"certificate", to_json(c, a)}}, certificate_text(c, a));
      code = c.report.strengthened ? exit_ok : exit_negative;
      return;
    }
    TuneOptions o;
    o.lambda0 = l0;
    o.epsilon0 = e0;
    o.scl_p0 = sc_p;
    o.m0 = sc_m;
    try {
      auto const r = tune_scl(gamma, gamma1, alpha, l, x, y, sigma, ambient, o);
      emit(opt, "gen-scl", Json{{"certificate", to_json(r.certificate, a)}, {"history", history_json(r.history)}},
           certificate_text(r.certificate, a) + "tuning:\n" + history_text(r.history));
    } catch (TuningFailed const& e) {
      emit(opt, "gen-scl", Json{{"error", e.what()}, {"history", history_json(e.history())}},
           std::string("tuning failed: ") + e.what() + "\n" + history_text(e.history()));
      code = exit_negative;
    }
  });

  // tower
  auto* tower = app.add_subcommand("tower", "Quotient towers");
  tower->require_subcommand(1);
  tower->add_flag("--json", opt.json, "Machine-readable output");

  auto* t_init = tower->add_subcommand("init", "Create a tower over a free group");
  std::string ti_file;
  std::optional<std::size_t> ti_rank;
  std::optional<std::string> ti_gens;
  t_init->add_option("file", ti_file, "Tower file to write")->required();
  t_init->add_option("--rank", ti_rank, "Rank of the base free group");
  t_init->add_option("--gens", ti_gens, "Generator names instead of --rank");
  t_init->add_flag("--json", opt.json, "Machine-readable output");
  t_init->callback([&] {
    Tower const t = ti_gens ? Tower::create(alphabet_from_list(*ti_gens)) : Tower::create(ti_rank.value_or(4));
    save_tower(t, ti_file);
    emit(opt, "tower init", Json{{"stages", t.size()}}, tower_status_text(t));
  });

  auto* t_push = tower->add_subcommand("push", "Push a stage");
  std::string tp_file, tp_x = "x", tp_y = "y", tp_lambda = "1/12", tp_epsilon = "1/50";
  std::optional<std::string> tp_absorb, tp_scl, tp_gamma1, tp_alpha, tp_sigma;
  std::string tp_bound = "1";
  std::optional<std::size_t> tp_floor, tp_ball, tp_q;
  std::size_t tp_m = 24;
  std::vector<std::string> tp_relators, tp_survive;
  t_push->add_option("file", tp_file, "Tower file (rewritten)")->required();
  t_push->add_option("--absorb", tp_absorb, "Tune an absorption relator for this element");
  t_push->add_option("--x", tp_x, "First subgroup generator")->capture_default_str();
  t_push->add_option("--y", tp_y, "Second subgroup generator")->capture_default_str();
  t_push->add_option("--p-floor", tp_floor, "Override the disjoint-range floor on p");
  t_push->add_option("--scl", tp_scl, "Tune a stable-norm relator for this element");
  t_push->add_option("--gamma1", tp_gamma1, "gamma1 for --scl");
  t_push->add_option("--alpha", tp_alpha, "alpha for --scl");
  t_push->add_option("--L", tp_bound, "ell_alpha(gamma1) bound for --scl")->capture_default_str();
  t_push->add_option("--sigma", tp_sigma, "Target stable bound for --scl");
  t_push->add_option("--m", tp_m, "Base kappa exponent for --scl")->capture_default_str();
  t_push->add_option("--q", tp_q, "Fixed q for --scl; tunes otherwise");
  t_push->add_option("--lambda", tp_lambda, "Target lambda0")->capture_default_str();
  t_push->add_option("--epsilon", tp_epsilon, "Target epsilon0")->capture_default_str();
  t_push->add_option("--relator", tp_relators, "Plain relator (repeatable)");
  t_push->add_option("--survive", tp_survive, "Word that must survive (repeatable)");
  t_push->add_option("--inject-ball", tp_ball, "Require injectivity on this ball");
  t_push->add_flag("--json", opt.json, "Machine-readable output");
  t_push->callback([&] {
    Tower const t = load_tower(tp_file);
    Alphabet const& a = t.alphabet();
    RelatorSet const& ambient = t.top().cumulative;
    Rational const l0 = parse_rational(tp_lambda), e0 = parse_rational(tp_epsilon);
    std::vector<RelatorCertificate> certs;
    std::vector<Goal> goals;
    Json history = Json::array();
    Word const x = parse_word(tp_x, a), y = parse_word(tp_y, a);
    TuneOptions o;
    o.lambda0 = l0;
    o.epsilon0 = e0;
    if (tp_absorb) {
      Word const gamma = parse_word(*tp_absorb, a);
      o.p_floor = tp_floor.value_or(disjoint_floor(t));
      auto const r = tune_absorption(gamma, x, y, ambient, o);
      certs.push_back(r.certificate);
      history = history_json(r.history);
      goals.push_back(Goal::absorb(gamma, x, y));
    }
    if (tp_scl) {
      if (!tp_gamma1 || !tp_alpha || !tp_sigma) {
        throw InvalidInput("--scl needs --gamma1, --alpha and --sigma");
      }
      Word const gamma = parse_word(*tp_scl, a), alpha = parse_word(*tp_alpha, a);
      Rational const sigma = parse_rational(*tp_sigma);
      o.m0 = tp_m;
      Word const gamma1 = parse_word(*tp_gamma1, a);
      Rational const bound = parse_rational(tp_bound);
      if (tp_q) {
        SclSpec spec{gamma, gamma1, alpha, bound, kappa_family(x, y, o.scl_p0, tp_m), *tp_q, sigma};
        certs.push_back(scl_relator(spec, ambient, l0, e0));
      } else {
        auto const r = tune_scl(gamma, gamma1, alpha, bound, x, y, sigma, ambient, o);
        certs.push_back(r.certificate);
        history = history_json(r.history);
      }
      goals.push_back(Goal::scl_bound(gamma, alpha, sigma));
    }
    std::vector<Word> plain;
    for (auto const& w : tp_relators) {
      plain.push_back(parse_word(w, a));
    }
    if (!tp_survive.empty()) {
      std::vector<Word> words;
      for (auto const& w : tp_survive) {
        words.push_back(parse_word(w, a));
      }
      goals.push_back(Goal::survive(std::move(words)));
    }
    if (tp_ball) {
      goals.push_back(Goal::inject(ball(a.rank(), *tp_ball)));
    }
    Tower const next = t.push_stage(certs, std::move(goals), plain);
    save_tower(next, tp_file);
    Json stage = to_json(next)["stages"].back();
    emit(opt, "tower push", Json{{"stage", stage}, {"history", history}}, tower_status_text(next));
    code = goals_code(next.top());
  });

  auto* t_eval = tower->add_subcommand("eval", "Evaluate a word at a stage");
  std::string te_file, te_word;
  std::optional<std::size_t> te_stage;
  t_eval->add_option("file", te_file, "Tower file")->required();
  t_eval->add_option("--word", te_word, "Word")->required();
  t_eval->add_option("--stage", te_stage, "Stage index (default: top)");
  t_eval->add_flag("--json", opt.json, "Machine-readable output");
  t_eval->callback([&] {
    Tower const t = load_tower(te_file);
    std::size_t const k = te_stage.value_or(t.size() - 1);
    Word const w = parse_word(te_word, t.alphabet());
    auto const v = t.eval(w, k);
    emit(opt, "tower eval", Json{{"stage", k}, {"verdict", to_json(v, t.alphabet())}},
         std::string(to_string(v.status)) + " at stage " + std::to_string(k) + "\n"
             + trace_text(v.trace, t.alphabet()));
    code = verdict_code(v.status);
  });

  auto* t_status = tower->add_subcommand("status", "Summarize a tower");
  std::string ts_file;
  t_status->add_option("file", ts_file, "Tower file")->required();
  t_status->add_flag("--json", opt.json, "Machine-readable output");
  t_status->callback([&] {
    Tower const t = load_tower(ts_file);
    emit(opt, "tower status", Json{{"tower", to_json(t)}}, tower_status_text(t));
    code = goals_code(t.top());
  });

  // witness
  auto* witness = app.add_subcommand("witness", "Sentences, abstract witnesses and finite checks");
  witness->require_subcommand(1);
  witness->add_flag("--json", opt.json, "Machine-readable output");
  std::string w_sentence;
  std::optional<std::string> w_group;
  std::string w_gens = "x y z";
  bool w_battery = false;
  std::vector<std::size_t> w_constants;
  auto add_sentence = [&](CLI::App* sub) {
    sub->add_option("sentence", w_sentence, "Prenex sentence, e.g. \"A x E y (y^2 = 1)\"")->required();
    sub->add_flag("--json", opt.json, "Machine-readable output");
  };

  auto* w_parse = witness->add_subcommand("parse", "Parse and print a sentence in normal form");
  add_sentence(w_parse);
  w_parse->callback([&] {
    Sentence const s = parse_sentence(w_sentence);
    emit(opt, "witness parse", Json{{"sentence", to_string(s)}}, to_string(s) + "\n");
  });

  auto* w_classify = witness->add_subcommand("classify", "Positive / one-quantifier / exists-forall");
  add_sentence(w_classify);
  w_classify->callback([&] {
    auto const c = classify(parse_sentence(w_sentence));
    std::ostringstream human;
    human << "positive: " << (c.positive ? "yes" : "no") << "\n"
          << "one quantifier: " << (c.one_quantifier ? "yes" : "no") << "\n"
          << "exists-forall: " << (c.exists_forall ? "yes" : "no") << "\n";
    emit(opt, "witness classify",
         Json{{"positive", c.positive}, {"one_quantifier", c.one_quantifier}, {"exists_forall", c.exists_forall}},
         human.str());
  });

  auto* w_extract = witness->add_subcommand("extract", "Abstract witnesses of an exists-forall sentence");
  add_sentence(w_extract);
  w_extract->callback([&] {
    Sentence const s = parse_sentence(w_sentence);
    EANormal const n = to_ea_normal(s);
    Json ws = Json::array();
    std::ostringstream human;
    for (auto const& w : witnesses(n)) {
      Json wj;
      wj["g"] = to_json(w.g);
      wj["h_generators"] = w.h_generators;
      Json v = Json::array();
      for (auto const& x : w.v) {
        v.push_back(word_text(x, n.symbols));
      }
      wj["v"] = v;
      ws.push_back(wj);
      human << "G = <";
      for (std::size_t i = 0; i < n.symbols.rank(); ++i) {
        human << (i ? ", " : "") << n.symbols.name(i);
      }
      human << " |";
      for (std::size_t i = 0; i < w.g.relators.size(); ++i) {
        human << (i ? ", " : " ") << word_text(w.g.relators[i], n.symbols);
      }
      human << ">, H = <";
      for (std::size_t i = 0; i < w.h_generators.size(); ++i) {
        human << (i ? ", " : "") << n.symbols.name(w.h_generators[i]);
      }
      human << ">, V = {";
      for (std::size_t i = 0; i < w.v.size(); ++i) {
        human << (i ? ", " : "") << word_text(w.v[i], n.symbols);
      }
      human << "}\n";
    }
    emit(opt, "witness extract", Json{{"witnesses", ws}}, human.str());
  });

  auto* w_check = witness->add_subcommand("check-finite", "Evaluate directly and through witnesses");
  add_sentence(w_check);
  w_check->add_option("--group", w_group, "Multiplication-table file");
  w_check->add_flag("--battery", w_battery, "Every group of order <= 6");
  w_check->add_option("--constants", w_constants, "Values of the constants, in order of use")->delimiter(',');
  w_check->callback([&] {
    Sentence const s = parse_sentence(w_sentence);
    std::vector<std::pair<std::string, FiniteGroup>> groups;
    if (w_group) {
      groups.emplace_back(*w_group, load_finite_group(*w_group));
    }
    if (w_battery) {
      auto b = small_group_battery();
      groups.insert(groups.end(), b.begin(), b.end());
    }
    if (groups.empty()) {
      throw InvalidInput("check-finite needs --group or --battery");
    }
    bool all_true = true;
    bool mismatch = false;
    Json evals = Json::array();
    std::ostringstream human;
    for (auto const& [name, g] : groups) {
      bool const truth = holds_in_finite(s, g, w_constants);
      bool const via = witness_evaluation_finite(s, g, w_constants);
      evals.push_back(Json{{"group", name}, {"holds", truth}, {"witness_evaluation", via}});
      human << name << ": " << (truth ? "true" : "false")
            << (truth == via ? "" : " (witness evaluation disagrees)") << "\n";
      all_true = all_true && truth;
      mismatch = mismatch || truth != via;
    }
    emit(opt, "witness check-finite", Json{{"evaluations", evals}}, human.str());
    code = mismatch ? exit_unknown : (all_true ? exit_ok : exit_negative);
  });

  auto* w_silly = witness->add_subcommand("silly", "Is a word silly");
  std::string ws_word;
  w_silly->add_option("word", ws_word, "Word")->required();
  w_silly->add_option("--gens", w_gens, "Alphabet")->capture_default_str();
  w_silly->add_flag("--json", opt.json, "Machine-readable output");
  w_silly->callback([&] {
    Alphabet const a = alphabet_from_list(w_gens);
    bool const s = is_silly(parse_word(ws_word, a), a.rank());
    emit(opt, "witness silly", Json{{"word", ws_word}, {"silly", s}}, s ? "silly\n" : "not silly\n");
    code = s ? exit_ok : exit_negative;
  });

  // norm
  auto* norm = app.add_subcommand("norm", "Certified norm bounds");
  norm->require_subcommand(1);
  norm->add_flag("--json", opt.json, "Machine-readable output");
  std::string n_file, n_element, n_budget = "4,2";
  std::optional<std::string> n_alpha, n_word;
  std::optional<std::size_t> n_stage;
  auto add_norm_options = [&](CLI::App* sub) {
    sub->add_option("file", n_file, "Tower file or presentation")->required();
    sub->add_option("--element", n_element, "Element to bound")->required();
    sub->add_option("--budget", n_budget, "Max factors and max conjugator length, F,C")->capture_default_str();
    sub->add_option("--stage", n_stage, "Tower stage (default: top)");
    sub->add_flag("--json", opt.json, "Machine-readable output");
  };
  auto run_norm = [&](std::string const& kind) {
    Quotient const q = load_quotient(n_file, n_stage);
    Alphabet const& a = q.alphabet();
    auto const [f, c] = parse_budget(n_budget);
    NormBudget const budget{f, c};
    QuotientHandle const h = q.handle();
    Word const element = parse_word(n_element, a);
    NormResult r;
    if (kind == "ell-alpha") {
      r = ell_alpha_bound(element, parse_word(*n_alpha, a), h, budget, q.stage);
    } else if (kind == "cl") {
      r = cl_bound(element, h, budget, q.stage);
    } else {
      Alphabet const vars({"x", "y", "z", "u", "v", "w"});
      r = w_length_bound(element, parse_word(*n_word, vars), h, budget, q.stage);
    }
    std::ostringstream human;
    human << to_string(r.status);
    if (r.status == NormStatus::certified) {
      auto const& cert = *r.certificate;
      human << ": bound " << to_string(cert.bound) << "\n";
      for (auto const& x : cert.expression) {
        human << "  " << to_string(x.conjugator, a) << " . " << to_string(x.base, a) << " . "
              << to_string(x.conjugator.inverse(), a) << "\n";
      }
      human << "replay: " << (replay(cert, h) ? "ok" : "FAILED") << "\n";
    } else if (r.status == NormStatus::infinite) {
      human << ": abelianization obstruction\n";
    } else {
      human << ": search budget exhausted\n";
    }
    emit(opt, "norm " + kind, Json{{"result", to_json(r, a)}}, human.str());
    code = r.status == NormStatus::certified ? exit_ok
           : r.status == NormStatus::infinite ? exit_negative
                                              : exit_unknown;
  };
  auto* n_ell = norm->add_subcommand("ell-alpha", "Bound ell_alpha");
  add_norm_options(n_ell);
  n_ell->add_option("--alpha", n_alpha, "alpha")->required();
  n_ell->callback([&] { run_norm("ell-alpha"); });
  auto* n_cl = norm->add_subcommand("cl", "Bound commutator length");
  add_norm_options(n_cl);
  n_cl->callback([&] { run_norm("cl"); });
  auto* n_w = norm->add_subcommand("w-length", "Bound w-length");
  add_norm_options(n_w);
  n_w->add_option("--word", n_word, "Law word over x y z u v w")->required();
  n_w->callback([&] { run_norm("w-length"); });

  // repro-remark18
  auto* repro = app.add_subcommand("repro-remark18", "Power-relator epimorphism reproduction");
  std::size_t r_n = 2;
  repro->add_option("--n", r_n, "n in (a^2 b^2)^(2n+1)")->capture_default_str();
  repro->add_flag("--json", opt.json, "Machine-readable output");
  repro->callback([&] {
    auto const r = power_relator_epimorphism_report(r_n);
    Alphabet const& a = r.target.alphabet;
    std::ostringstream human;
    human << "target: <a, b | " << to_string(r.target.relators.front(), a) << ">\n"
          << report_text(r.report, a) << "reference Delta = " << r.reference.delta << "\n"
          << "x -> a, y -> b, z -> " << to_string(r.images[2], a) << "\n"
          << "relator image " << to_string(r.relator_image, a) << ": " << to_string(r.image_verdict.status)
          << "\n"
          << "hom " << (r.hom_verified ? "verified" : "NOT verified") << ", "
          << (r.surjective ? "surjective" : "not surjective") << "\n";
    auto factors = [](AbelianizationData const& d) {
      std::string s = "Z^" + std::to_string(d.free_rank);
      for (auto const& f : d.invariant_factors()) {
        s += " + Z/" + f.get_str();
      }
      return s;
    };
    human << "source abelianization: " << factors(r.source_abelianization) << "\n"
          << "target abelianization: " << factors(r.target_abelianization)
          << (r.noncyclic_image ? " (image not cyclic)" : "") << "\n";
    emit(opt, "repro-remark18", to_json(r), human.str());
    code = r.all_checks_pass() ? exit_ok : exit_negative;
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  } catch (ParseError const& e) {
    std::cerr << "forge: parse error at " << e.position() << ": " << e.what() << "\n";
    return exit_usage;
  } catch (InvalidInput const& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return exit_usage;
  } catch (DomainError const& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return exit_usage;
  } catch (TuningFailed const& e) {
    std::cerr << "forge: tuning failed: " << e.what() << "\n";
    return exit_negative;
  } catch (BudgetExceeded const& e) {
    std::cerr << "forge: budget exceeded: " << e.what() << "\n";
    return exit_unknown;
  } catch (UnsoundPresentation const& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return exit_unknown;
  } catch (Error const& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return exit_unknown;
  }
  return code;
}
