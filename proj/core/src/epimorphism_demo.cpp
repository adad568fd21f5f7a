#include "forge/epimorphism_demo.hpp"

namespace forge {

  bool EpimorphismReport::lambda_matches_reference() const {
    return reference.delta == report.delta;
  }

  bool EpimorphismReport::all_checks_pass() const {
    return hom_verified && surjective && noncyclic_image && lambda_matches_reference()
           && (n == 0 || report.cprime_sixth);
  }

  EpimorphismReport power_relator_epimorphism_report(std::size_t n) {
    EpimorphismReport out;
    out.n = n;
    Alphabet const ab({"a", "b"});
    Alphabet const xyz({"x", "y", "z"});
    Word const base = parse_word("a2b2", ab);
    Word const relator = base.pow(static_cast<std::int64_t>(2 * n + 1));
    out.source = Presentation{xyz, {parse_word("x2y2z2", xyz)}};
    out.target = Presentation{ab, {relator}};

    RelatorSet const r = out.target.relator_set();
    out.report = sc_report(r);
    out.reference = max_piece_reference(symmetrize(r));

    Tower const t = Tower::create(ab).push_stage({}, {}, std::span<Word const>(&relator, 1));
    out.images = {Word::generator(0), Word::generator(1), base.pow(static_cast<std::int64_t>(n))};
    out.relator_image = substitute(out.source.relators.front(), out.images);
    out.image_verdict = t.eval(out.relator_image, 1);
    out.hom_verified = t.check_hom(out.source, out.images, 1).ok()
                       && out.image_verdict.status == Triviality::trivial;
    out.surjective = out.images[0] == Word::generator(0) && out.images[1] == Word::generator(1);

    out.source_abelianization = abelianization(out.source);
    out.target_abelianization = abelianization(out.target);
    out.noncyclic_image = out.target_abelianization.free_rank
                              + out.target_abelianization.invariant_factors().size()
                          >= 2;
    return out;
  }

}  // namespace forge
