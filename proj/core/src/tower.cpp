#include "forge/tower.hpp"

#include <algorithm>

#include "forge/errors.hpp"
#include "forge/parallel.hpp"

namespace forge {

  Goal Goal::absorb(Word gamma, Word x, Word y) {
    Goal g;
    g.kind = GoalKind::absorb;
    g.target = std::move(gamma);
    g.words = {std::move(x), std::move(y)};
    return g;
  }

  Goal Goal::inject(std::vector<Word> u) {
    Goal g;
    g.kind = GoalKind::inject;
    g.words = std::move(u);
    return g;
  }

  Goal Goal::survive(std::vector<Word> words) {
    Goal g;
    g.kind = GoalKind::survive;
    g.words = std::move(words);
    return g;
  }

  Goal Goal::scl_bound(Word gamma, Word alpha, Rational sigma) {
    Goal g;
    g.kind = GoalKind::scl_bound;
    g.target = std::move(gamma);
    g.alpha = std::move(alpha);
    g.sigma = sigma;
    return g;
  }

  Goal Goal::hom_preserve(std::string witness_id) {
    Goal g;
    g.kind = GoalKind::hom_preserve;
    g.witness_id = std::move(witness_id);
    return g;
  }

  QuotientHandle const& Stage::quotient() const {
    if (!handle_) {
      throw DomainError("stage " + std::to_string(index) + " has no quotient attached");
    }
    return *handle_;
  }

  bool Stage::operator==(Stage const& other) const {
    return index == other.index && new_relators == other.new_relators
           && cumulative == other.cumulative && report == other.report && goals == other.goals
           && certificates == other.certificates
           && injectivity_radius_lb == other.injectivity_radius_lb && heuristic == other.heuristic;
  }

  LedgerEntry const* Ledger::find(std::string const& id) const {
    for (auto const* list : {&positive, &negative}) {
      for (auto const& e : *list) {
        if (e.id == id) {
          return &e;
        }
      }
    }
    return nullptr;
  }

  char const* to_string(GoalKind kind) {
    switch (kind) {
      case GoalKind::absorb: return "absorb";
      case GoalKind::inject: return "inject";
      case GoalKind::survive: return "survive";
      case GoalKind::scl_bound: return "scl_bound";
      case GoalKind::hom_preserve: return "hom_preserve";
    }
    return "?";
  }

  char const* to_string(GoalStatus status) {
    switch (status) {
      case GoalStatus::pending: return "pending";
      case GoalStatus::certified: return "certified";
      case GoalStatus::failed: return "failed";
      case GoalStatus::heuristic: return "heuristic";
    }
    return "?";
  }

  namespace {

    std::size_t radius_bound(RelatorSet const& fresh, SCReport const& joint) {
      std::size_t t_new = fresh[0].size();
      for (auto const& r : fresh.relators()) {
        t_new = std::min(t_new, r.size());
      }
      // (1 - 3 Delta / T_new) T_new is an integer here.
      std::size_t const three_delta = 3 * joint.delta;
      if (t_new <= three_delta) {
        return 0;
      }
      std::size_t const half = (t_new - three_delta) / 2;
      return half == 0 ? 0 : half - 1;
    }

    void attach(Stage& s) {
      s.heuristic = s.report.has_value() && !s.report->cprime_sixth;
    }

  }  // namespace

  Tower Tower::create(std::size_t rank) {
    if (rank < 2) {
      throw InvalidInput("a tower needs a base free group of rank at least 2");
    }
    return create(rank == 4 ? Alphabet({"s", "t", "x", "y"}) : Alphabet::standard(rank));
  }

  Tower Tower::create(Alphabet alphabet) {
    if (alphabet.rank() < 2) {
      throw InvalidInput("a tower needs a base free group of rank at least 2");
    }
    Tower t;
    t.alphabet_ = alphabet;
    Stage base;
    base.new_relators = RelatorSet(alphabet, {});
    base.cumulative = base.new_relators;
    base.handle_ = std::make_shared<QuotientHandle const>(base.cumulative);
    t.stages_.push_back(std::move(base));
    return t;
  }

  Tower Tower::from_parts(Alphabet alphabet, std::vector<Stage> stages, Ledger ledger) {
    if (stages.empty()) {
      throw InvalidInput("a tower has at least its base stage");
    }
    Tower t;
    t.alphabet_ = std::move(alphabet);
    for (std::size_t k = 0; k < stages.size(); ++k) {
      Stage& s = stages[k];
      if (s.index != k) {
        throw InvalidInput("stage " + std::to_string(k) + " carries index " + std::to_string(s.index));
      }
      if (!(s.cumulative.alphabet() == t.alphabet_) || !(s.new_relators.alphabet() == t.alphabet_)) {
        throw InvalidInput("stage " + std::to_string(k) + " uses a different alphabet");
      }
      RelatorSet const expected
          = k == 0 ? s.new_relators : stages[k - 1].cumulative.merged(s.new_relators.relators());
      if (!(expected == s.cumulative)) {
        throw InvalidInput("stage " + std::to_string(k) + " cumulative relators do not extend stage "
                           + std::to_string(k - 1));
      }
      s.handle_ = std::make_shared<QuotientHandle const>(s.cumulative);
    }
    t.stages_ = std::move(stages);
    t.ledger_ = std::move(ledger);
    return t;
  }

  Stage const& Tower::stage(std::size_t k) const {
    if (k >= stages_.size()) {
      throw InvalidInput("stage " + std::to_string(k) + " out of range (tower has "
                         + std::to_string(stages_.size()) + ")");
    }
    return stages_[k];
  }

  std::vector<RelatorCertificate> Tower::certificates_through(std::size_t k) const {
    std::vector<RelatorCertificate> out;
    for (std::size_t i = 0; i <= k && i < stages_.size(); ++i) {
      out.insert(out.end(), stages_[i].certificates.begin(), stages_[i].certificates.end());
    }
    return out;
  }

  Tower Tower::push_stage(std::span<RelatorCertificate const> certificates,
                          std::vector<Goal> goals,
                          std::span<Word const> plain_relators) const {
    std::vector<Word> fresh;
    auto add = [&](Word const& w) {
      check_alphabet(alphabet_, w);
      Word r = cyclic_reduce(w).word;
      if (!r.empty() && std::find(fresh.begin(), fresh.end(), r) == fresh.end()) {
        fresh.push_back(std::move(r));
      }
    };
    for (auto const& c : certificates) {
      add(c.relator);
    }
    for (auto const& w : plain_relators) {
      add(w);
    }
    for (auto const& g : goals) {
      check_alphabet(alphabet_, g.target);
      check_alphabet(alphabet_, g.alpha);
      for (auto const& w : g.words) {
        check_alphabet(alphabet_, w);
      }
      if (g.kind == GoalKind::absorb && g.words.size() != 2) {
        throw InvalidInput("an absorb goal names exactly two subgroup generators");
      }
    }
    for (auto const& e : ledger_.negative) {
      bool const listed = std::any_of(goals.begin(), goals.end(), [&](Goal const& g) {
        return g.kind == GoalKind::hom_preserve && g.witness_id == e.id;
      });
      if (!listed) {
        goals.push_back(Goal::hom_preserve(e.id));
      }
    }

    Tower next = *this;
    Stage const& prev = stages_.back();
    Stage s;
    s.index = stages_.size();
    s.new_relators = RelatorSet(alphabet_, fresh);
    s.cumulative = prev.cumulative.merged(fresh);
    s.certificates.assign(certificates.begin(), certificates.end());
    if (!s.cumulative.empty()) {
      std::vector<RelatorSet> parts;
      for (auto const& st : stages_) {
        parts.push_back(st.new_relators);
      }
      parts.push_back(s.new_relators);
      s.report = joint_report(parts);
    }
    s.injectivity_radius_lb = s.new_relators.empty() || !s.report
                                  ? prev.injectivity_radius_lb
                                  : std::optional<std::size_t>(radius_bound(s.new_relators, *s.report));
    attach(s);
    s.handle_ = s.cumulative == prev.cumulative
                    ? prev.handle_
                    : std::make_shared<QuotientHandle const>(s.cumulative);
    next.stages_.push_back(std::move(s));

    std::size_t const k = next.stages_.size() - 1;
    std::vector<Goal> checked(goals.size());
    parallel_for(goals.size(), [&](std::size_t i) { checked[i] = next.check_goal(goals[i], k); });
    next.stages_.back().goals = std::move(checked);
    return next;
  }

  Goal Tower::check_goal(Goal goal, std::size_t k) const {
    Stage const& st = stages_[k];
    QuotientHandle const& q = st.quotient();
    goal.evidence = {};
    auto done = [&](GoalStatus status, std::string note) {
      goal.status = status;
      goal.evidence.note = std::move(note);
      return goal;
    };

    switch (goal.kind) {
      case GoalKind::absorb: {
        if (goal.target == goal.words[0] || goal.target == goal.words[1]) {
          return done(GoalStatus::certified, "generator of the subgroup");
        }
        auto const certs = certificates_through(k);
        for (std::size_t i = 0; i < certs.size(); ++i) {
          auto const* spec = std::get_if<AbsorptionSpec>(&certs[i].spec);
          if (spec == nullptr || spec->gamma != goal.target || spec->x != goal.words[0]
              || spec->y != goal.words[1] || !consequence_identity_holds(certs[i])) {
            continue;
          }
          auto v = eq_in_quotient(certs[i].consequence.lhs, certs[i].consequence.rhs, q);
          if (v.status == Triviality::trivial) {
            goal.evidence.certificate = i;
            goal.evidence.trace = std::move(v.trace);
            return done(GoalStatus::certified,
                        "gamma = " + to_string(certs[i].consequence.rhs, alphabet_));
          }
        }
        return done(GoalStatus::failed, "no absorption certificate confirms the identity");
      }

      case GoalKind::scl_bound: {
        auto const certs = certificates_through(k);
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < certs.size(); ++i) {
          auto const* spec = std::get_if<SclSpec>(&certs[i].spec);
          if (spec == nullptr || spec->gamma != goal.target || spec->alpha != goal.alpha
              || !consequence_identity_holds(certs[i]) || !certs[i].consequence.stable_bound) {
            continue;
          }
          Rational const b = *certs[i].consequence.stable_bound;
          if (b >= goal.sigma || (best && *certs[*best].consequence.stable_bound <= b)) {
            continue;
          }
          auto v = eq_in_quotient(certs[i].consequence.lhs, certs[i].consequence.rhs, q);
          if (v.status == Triviality::trivial) {
            best = i;
            goal.evidence.trace = std::move(v.trace);
          }
        }
        if (!best) {
          return done(GoalStatus::failed, "no stable-norm certificate reaches the bound");
        }
        goal.evidence.certificate = *best;
        goal.evidence.bound = certs[*best].consequence.stable_bound;
        return done(GoalStatus::certified, "stable bound " + forge::to_string(*goal.evidence.bound));
      }

      case GoalKind::inject: {
        if (st.cumulative.empty()) {
          return done(GoalStatus::certified, "free group");
        }
        if (!q.sound()) {
          return done(GoalStatus::heuristic, "stage is not C'(1/6)");
        }
        auto const r = injectivity_certificate(goal.words, q);
        std::string note = std::to_string(r.pairs) + " pairs, " + std::to_string(r.fast_path)
                           + " by the length bound";
        if (!r.certified) {
          note += "; collision " + to_string(r.failures.front().first, alphabet_) + " = "
                  + to_string(r.failures.front().second, alphabet_);
        }
        return done(r.certified ? GoalStatus::certified : GoalStatus::failed, note);
      }

      case GoalKind::survive: {
        bool unknown = false;
        for (auto const& w : goal.words) {
          auto const v = is_trivial(w, q);
          if (v.status == Triviality::trivial) {
            goal.evidence.trace = v.trace;
            return done(GoalStatus::failed, to_string(w, alphabet_) + " dies");
          }
          unknown = unknown || v.status == Triviality::unknown;
        }
        return unknown ? done(GoalStatus::heuristic, "Dehn reduction inconclusive on an unsound stage")
                       : done(GoalStatus::certified, std::to_string(goal.words.size()) + " words survive");
      }

      case GoalKind::hom_preserve: {
        LedgerEntry const* e = ledger_.find(goal.witness_id);
        if (e == nullptr) {
          return done(GoalStatus::failed, "unknown witness " + goal.witness_id);
        }
        if (!e->poison) {
          return done(GoalStatus::failed, goal.witness_id + " has no poison");
        }
        Morphism const& phi = *e->poison;
        auto const hom = check_hom(phi.source, phi.images, k);
        if (!hom.ok()) {
          return done(GoalStatus::failed, "poison is no longer a morphism");
        }
        bool unknown = false;
        for (auto const& v : e->witness.abstract.v) {
          auto const verdict = is_trivial(substitute(v, phi.images), q);
          if (verdict.status == Triviality::trivial) {
            goal.evidence.trace = verdict.trace;
            return done(GoalStatus::failed, "a V-image dies");
          }
          unknown = unknown || verdict.status == Triviality::unknown;
        }
        return unknown ? done(GoalStatus::heuristic, "V-images undecided on an unsound stage")
                       : done(GoalStatus::certified, "poison survives");
      }
    }
    return goal;
  }

  TrivialityVerdict Tower::eval(Word const& w, std::size_t k) const {
    check_alphabet(alphabet_, w);
    return is_trivial(w, stage(k).quotient());
  }

  CheckHomResult Tower::check_hom(Presentation const& source,
                                  std::span<Word const> images,
                                  std::size_t k) const {
    if (images.size() != source.alphabet.rank()) {
      throw InvalidInput("expected " + std::to_string(source.alphabet.rank()) + " images, got "
                         + std::to_string(images.size()));
    }
    for (auto const& w : images) {
      check_alphabet(alphabet_, w);
    }
    QuotientHandle const& q = stage(k).quotient();
    CheckHomResult out;
    for (std::size_t i = 0; i < source.relators.size(); ++i) {
      auto v = is_trivial(substitute(source.relators[i], images), q);
      if (v.status != Triviality::trivial) {
        out.failing_relators.push_back(i);
      }
      out.verdicts.push_back(std::move(v));
    }
    if (out.failing_relators.empty()) {
      out.morphism = Morphism{source, {images.begin(), images.end()}, k};
    }
    return out;
  }

  Tower Tower::ledger_update(RealizedWitness const& witness,
                             Decision decision,
                             std::optional<Morphism> poison,
                             std::optional<std::string> sentence) const {
    AbstractWitness const& w = witness.abstract;
    if (witness.iota.size() != w.h_generators.size()) {
      throw InvalidInput("iota needs one image per H generator");
    }
    for (auto const& img : witness.iota) {
      check_alphabet(alphabet_, img);
    }
    Tower next = *this;
    LedgerEntry entry;
    entry.id = "W" + std::to_string(ledger_.size() + 1);
    entry.witness = witness;
    entry.decision = decision;
    entry.stage = top().index;
    entry.sentence = sentence;

    if (decision == Decision::positive) {
      if (poison) {
        throw InvalidInput("a positive decision carries no poison");
      }
      next.ledger_.positive.push_back(std::move(entry));
      if (sentence
          && std::find(ledger_.satisfied_sentences.begin(), ledger_.satisfied_sentences.end(), *sentence)
                 == ledger_.satisfied_sentences.end()) {
        next.ledger_.satisfied_sentences.push_back(*sentence);
      }
      return next;
    }

    if (!poison) {
      throw InvalidInput("a negative decision needs a poison");
    }
    if (!(poison->source == w.g)) {
      throw InvalidInput("poison rejected: its source is not the witness group");
    }
    if (poison->target != top().index) {
      throw InvalidInput("poison rejected: it must target the top stage");
    }
    auto const hom = check_hom(poison->source, poison->images, poison->target);
    if (!hom.ok()) {
      throw InvalidInput("poison rejected: relator " + std::to_string(hom.failing_relators.front())
                         + " of the witness group does not map to 1");
    }
    QuotientHandle const& q = top().quotient();
    for (std::size_t i = 0; i < w.h_generators.size(); ++i) {
      auto const v = eq_in_quotient(poison->images[w.h_generators[i]], witness.iota[i], q);
      if (v.status != Triviality::trivial) {
        throw InvalidInput("poison rejected: it does not extend iota on H generator "
                           + std::to_string(i));
      }
    }
    for (auto const& v : w.v) {
      auto const verdict = is_trivial(substitute(v, poison->images), q);
      if (verdict.status == Triviality::trivial) {
        throw InvalidInput("poison rejected: a V-image is trivial");
      }
      if (verdict.status == Triviality::unknown) {
        throw InvalidInput("poison rejected: a V-image cannot be certified nontrivial");
      }
    }
    entry.poison = std::move(poison);
    next.ledger_.negative.push_back(std::move(entry));
    return next;
  }

}  // namespace forge
