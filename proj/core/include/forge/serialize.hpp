#pragma once

// JSON encodings. Words are stored in the text syntax of their alphabet,
// rationals as "N/D" strings, big integers as decimal strings. Tower files
// round-trip byte for byte.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "forge/dehn.hpp"
#include "forge/epimorphism_demo.hpp"
#include "forge/norms.hpp"
#include "forge/relator_forge.hpp"
#include "forge/small_cancellation.hpp"
#include "forge/tower.hpp"
#include "forge/witness.hpp"
#include "forge/words.hpp"

namespace forge {

  using Json = nlohmann::ordered_json;

  inline constexpr char const* json_schema = "forge/1";

  Json to_json(Word const& w, Alphabet const& a);
  Word word_from_json(Json const& j, Alphabet const& a);

  Json to_json(Rational const& q);
  Rational rational_from_json(Json const& j);

  Json to_json(Alphabet const& a);
  Alphabet alphabet_from_json(Json const& j);

  Json to_json(Presentation const& p);
  Presentation presentation_from_json(Json const& j);

  Json to_json(Origin const& o);
  Origin origin_from_json(Json const& j);

  Json to_json(SCReport const& r, Alphabet const& a);
  SCReport report_from_json(Json const& j, Alphabet const& a);

  Json to_json(DehnStep const& s, Alphabet const& a);
  DehnStep step_from_json(Json const& j, Alphabet const& a);

  Json to_json(RelatorCertificate const& c, Alphabet const& a);
  RelatorCertificate certificate_from_json(Json const& j, Alphabet const& a);

  Json to_json(TuneStep const& s);
  Json to_json(TrivialityVerdict const& v, Alphabet const& a);
  Json to_json(InjectivityReport const& r, Alphabet const& a);
  Json to_json(AbelianizationData const& d);
  Json to_json(NormCertificate const& c, Alphabet const& a);
  Json to_json(NormResult const& r, Alphabet const& a);
  Json to_json(EpimorphismReport const& r);

  Json to_json(Goal const& g, Alphabet const& a);
  Goal goal_from_json(Json const& j, Alphabet const& a);

  Json to_json(Tower const& t);
  // Throws InvalidInput on malformed input.
  Tower tower_from_json(Json const& j);

  std::string dump_tower(Tower const& t);
  Tower parse_tower(std::string_view text);
  Tower load_tower(std::string const& path);
  void save_tower(Tower const& t, std::string const& path);

}  // namespace forge
