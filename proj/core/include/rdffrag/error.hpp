#pragma once

#include <stdexcept>
#include <string>

namespace rdffrag {

/// Malformed input text. `line` is 1-based; 0 when not line-addressable.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message
                                : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration (budget below seed cost, bad parameter values, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rdffrag
