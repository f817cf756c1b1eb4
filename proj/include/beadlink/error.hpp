#pragma once

#include <stdexcept>
#include <string>

namespace beadlink {

/// Malformed or inconsistent input: bad file contents, mismatched
/// dimensions, out-of-range labels. Distinct from axiom violations, which
/// are reported as data rather than thrown.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure with a source location attached to the message.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace beadlink
