#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace forge {

  // Exact rational arithmetic for small-cancellation ratios; never floating
  // point.
  using Rational = boost::rational<std::int64_t>;

  // Accepts "N/D" or "N".
  Rational parse_rational(std::string_view text);

  // Prints "N/D", or "N" when the denominator is one.
  std::string to_string(Rational const& q);

}  // namespace forge
