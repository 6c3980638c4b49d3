#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sharpwt {

/// Parameters outside the range where the underlying integrals converge.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed serialized input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sharpwt
