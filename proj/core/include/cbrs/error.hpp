#pragma once

#include <stdexcept>
#include <string>

namespace cbrs {

/// Error raised while reading a text input (KML, CSV, GeoJSON). Carries the
/// 1-based line number where the problem was found when known (0 otherwise).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

private:
  int line_;
};

} // namespace cbrs
