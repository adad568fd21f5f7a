#include "forge/relator_forge.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace forge {

  Rational SclSpec::stable_bound() const {
    return Rational(static_cast<std::int64_t>(p())) * gamma1_bound
           / static_cast<std::int64_t>(q);
  }

  bool consequence_identity_holds(RelatorCertificate const& c) {
    Word const key = conjugacy_key(c.consequence.lhs.inverse() * c.consequence.rhs);
    return !c.relator.empty()
           && (key == conjugacy_key(c.relator) || key == conjugacy_key(c.relator.inverse()));
  }

  namespace {

    SCReport report_with(RelatorSet const& ambient, Word const& relator, Rational lambda0,
                         Rational epsilon0) {
      std::array<RelatorSet, 2> const stages{ambient, RelatorSet(ambient.alphabet(), {relator})};
      return joint_report(stages, lambda0, epsilon0);
    }

    void check_words(RelatorSet const& ambient, std::initializer_list<Word const*> words) {
      for (Word const* w : words) {
        check_alphabet(ambient.alphabet(), *w);
      }
    }

  }  // namespace

  RelatorCertificate absorption_relator(AbsorptionSpec const& spec,
                                        RelatorSet const& ambient,
                                        Rational lambda0,
                                        Rational epsilon0) {
    check_words(ambient, {&spec.gamma, &spec.x, &spec.y});
    if (spec.gamma.empty() || primitive_root(spec.gamma).proper_power()) {
      throw InvalidSpec("gamma must be a nontrivial primitive element");
    }
    if (spec.x.empty() || spec.y.empty() || commutator(spec.x, spec.y).empty()) {
      throw InvalidSpec("x and y must generate a free subgroup of rank two");
    }
    if (spec.p == 0 || spec.q == 0) {
      throw InvalidSpec("p and q must be positive");
    }
    Word tail;
    for (std::size_t k = 0; k <= spec.q; ++k) {
      tail *= spec.x * spec.y.pow(static_cast<std::int64_t>(spec.p + k));
    }
    Word const relator = cyclic_reduce(spec.gamma * tail).word;
    if (relator.size() < 2 * (spec.p + spec.q)) {
      throw DegenerateSpec("gamma cancels into the xy-tail: relator length "
                           + std::to_string(relator.size()) + " below 2(p+q)");
    }
    if (primitive_root(relator).proper_power()) {
      throw DegenerateSpec("absorption relator is a proper power");
    }
    RelatorCertificate c;
    c.relator = relator;
    c.spec = spec;
    c.report = report_with(ambient, relator, lambda0, epsilon0);
    c.consequence = Consequence{ConsequenceKind::absorption, spec.gamma, tail.inverse(), std::nullopt};
    return c;
  }

  RelatorCertificate scl_relator(SclSpec const& spec,
                                 RelatorSet const& ambient,
                                 Rational lambda0,
                                 Rational epsilon0) {
    check_words(ambient, {&spec.gamma, &spec.gamma1, &spec.alpha});
    for (auto const& k : spec.kappas) {
      check_alphabet(ambient.alphabet(), k);
    }
    if (spec.gamma.empty() || spec.gamma1.empty()) {
      throw InvalidSpec("gamma and gamma1 must be nontrivial");
    }
    if (spec.kappas.empty()) {
      throw InvalidSpec("at least one kappa is required");
    }
    if (std::set<Word>(spec.kappas.begin(), spec.kappas.end()).size() != spec.kappas.size()) {
      throw InvalidSpec("kappas must be pairwise distinct");
    }
    if (spec.q == 0 || spec.sigma <= 0 || spec.gamma1_bound < 0) {
      throw InvalidSpec("q and sigma must be positive and L nonnegative");
    }
    Rational const bound = spec.stable_bound();
    if (!(bound < spec.sigma)) {
      throw InvalidSpec("p L / q = " + to_string(bound) + " is not below sigma = "
                        + to_string(spec.sigma));
    }
    Word product;
    for (auto const& k : spec.kappas) {
      product *= k * spec.gamma1 * k.inverse();
    }
    Word const lhs = spec.gamma.pow(static_cast<std::int64_t>(spec.q));
    Word const relator = cyclic_reduce(lhs.inverse() * product).word;
    if (relator.empty()) {
      throw DegenerateSpec("stable-norm relator reduces to the identity");
    }
    RelatorCertificate c;
    c.relator = relator;
    c.spec = spec;
    c.report = report_with(ambient, relator, lambda0, epsilon0);
    c.consequence = Consequence{ConsequenceKind::stable_norm, lhs, product, bound};
    return c;
  }

  std::vector<Word> kappa_family(Word const& x, Word const& y, std::size_t count,
                                 std::size_t base_length) {
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
      out.push_back(x * y.pow(static_cast<std::int64_t>(base_length + i)) * x);
    }
    return out;
  }

  namespace {

    TuneStep step_of(RelatorCertificate const& c, std::size_t p, std::size_t q, std::size_t m) {
      return TuneStep{p, q, m, c.report.delta, c.report.t, c.report.lambda, c.report.strengthened};
    }

    template <class Build>
    TuneResult run_tuning(TuneOptions const& options, char const* what, Build&& build) {
      std::vector<TuneStep> history;
      std::optional<SCReport> best;
      for (std::size_t i = 0; i < options.max_iterations; ++i) {
        std::optional<RelatorCertificate> c;
        TuneStep step;
        try {
          c = build(i, step);
        } catch (DegenerateSpec const&) {
          history.push_back(step);
          continue;
        }
        step = step_of(*c, step.p, step.q, step.m);
        history.push_back(step);
        if (!best || c->report.lambda < best->lambda
            || (c->report.lambda == best->lambda && c->report.t > best->t)) {
          best = c->report;
        }
        if (step.success) {
          return TuneResult{std::move(*c), std::move(history)};
        }
      }
      throw TuningFailed(std::string(what) + " tuning did not reach the targets within "
                             + std::to_string(options.max_iterations) + " doublings",
                         std::move(best), std::move(history));
    }

    std::size_t doubled(std::size_t base, std::size_t i) {
      return base << std::min<std::size_t>(i, 40);
    }

  }  // namespace

  TuneResult tune_absorption(Word const& gamma,
                             Word const& x,
                             Word const& y,
                             RelatorSet const& ambient,
                             TuneOptions const& options) {
    return run_tuning(options, "absorption", [&](std::size_t i, TuneStep& step) {
      step.p = std::max(doubled(std::max<std::size_t>(options.p0, 1), i), options.p_floor);
      step.q = doubled(std::max<std::size_t>(options.q0, 1), i);
      return absorption_relator(AbsorptionSpec{gamma, x, y, step.p, step.q}, ambient,
                                options.lambda0, options.epsilon0);
    });
  }

  TuneResult tune_scl(Word const& gamma,
                      Word const& gamma1,
                      Word const& alpha,
                      Rational gamma1_bound,
                      Word const& x,
                      Word const& y,
                      Rational sigma,
                      RelatorSet const& ambient,
                      TuneOptions const& options) {
    if (sigma <= 0) {
      throw InvalidSpec("sigma must be positive");
    }
    std::size_t const p = std::max<std::size_t>(options.scl_p0, 1);
    Rational const ratio = Rational(static_cast<std::int64_t>(p)) * gamma1_bound / sigma;
    std::size_t const q_min = static_cast<std::size_t>(ratio.numerator() / ratio.denominator()) + 1;
    return run_tuning(options, "stable-norm", [&](std::size_t i, TuneStep& step) {
      step.p = p;
      step.q = doubled(q_min, i);
      step.m = doubled(std::max<std::size_t>(options.m0, 1), i) + options.m_offset;
      SclSpec spec{gamma, gamma1, alpha, gamma1_bound,
                   kappa_family(x, y, step.p, step.m), step.q, sigma};
      return scl_relator(spec, ambient, options.lambda0, options.epsilon0);
    });
  }

}  // namespace forge
