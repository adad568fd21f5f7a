#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forge {

  // Root of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed arguments: out-of-range generators, unreduced relators, bad
  // alphabets.
  class InvalidInput : public Error {
   public:
    using Error::Error;
  };

  // The input is well-formed but outside the domain of the operation.
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  // A search or enumeration would exceed its configured budget.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  class UnsoundPresentation : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::string const& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)),
          position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept {
      return position_;
    }

   private:
    std::size_t position_;
  };

}  // namespace forge
