#pragma once

// The epimorphism <x,y,z | x^2 y^2 z^2> onto <a,b | (a^2 b^2)^(2n+1)> given
// by x -> a, y -> b, z -> (a^2 b^2)^n, checked end to end.

#include <cstddef>
#include <vector>

#include "forge/dehn.hpp"
#include "forge/norms.hpp"
#include "forge/presentation.hpp"
#include "forge/small_cancellation.hpp"
#include "forge/tower.hpp"

namespace forge {

  struct EpimorphismReport {
    std::size_t n = 0;
    Presentation source;
    Presentation target;
    SCReport report;
    // Brute-force piece statistics of the same relator.
    PieceAnalysis reference;
    std::vector<Word> images;
    // a^2 b^2 ((a^2 b^2)^n)^2, the image of the source relator.
    Word relator_image;
    TrivialityVerdict image_verdict;
    bool hom_verified = false;
    // The images of x and y are the target generators.
    bool surjective = false;
    AbelianizationData source_abelianization;
    AbelianizationData target_abelianization;
    // The target abelianization needs two generators, so the image is not
    // cyclic, unlike every morphism from the source into a free group.
    bool noncyclic_image = false;

    [[nodiscard]] bool lambda_matches_reference() const;
    [[nodiscard]] bool all_checks_pass() const;
  };

  EpimorphismReport power_relator_epimorphism_report(std::size_t n);

}  // namespace forge
