#include "forge/rational.hpp"

#include <charconv>

#include "forge/errors.hpp"

namespace forge {

  namespace {

    std::int64_t parse_integer(std::string_view text, std::string_view whole) {
      std::int64_t value = 0;
      auto const* first = text.data();
      auto const* last = text.data() + text.size();
      if (first != last && *first == '+') {
        ++first;
      }
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || first == last) {
        throw InvalidInput("malformed rational '" + std::string(whole) + "'");
      }
      return value;
    }

  }  // namespace

  Rational parse_rational(std::string_view text) {
    auto const slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(parse_integer(text, text));
    }
    std::int64_t const num = parse_integer(text.substr(0, slash), text);
    std::int64_t const den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
      throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }

  std::string to_string(Rational const& q) {
    if (q.denominator() == 1) {
      return std::to_string(q.numerator());
    }
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
  }

}  // namespace forge
