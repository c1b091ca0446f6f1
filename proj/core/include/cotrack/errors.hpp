#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cotrack {

/// Input text (CSV or JSON) could not be parsed. `line` is 1-based; 0 when
/// the location is unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string{}) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// A scenario parsed but violates an invariant. `field` names the offending
/// JSON path, e.g. "collab.lower".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class CalibrationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MalformedPayload : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cotrack
