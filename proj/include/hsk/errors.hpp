#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsk {

// Malformed user input: bad instance text, edge larger than d, index out of range.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Parameters outside what the engine supports (d < 3).
class UnsupportedParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The engine reached a state its own invariants rule out (solver or translation bug).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Brute-force oracle asked to decide an instance above its vertex ceiling.
class OracleCeilingExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace hsk
