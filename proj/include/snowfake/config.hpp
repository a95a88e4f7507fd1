#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "snowfake/model.hpp"

namespace snowfake {

/// Parse failure. line() is 1-based, or 0 when the error is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads the `[section]` / `key = value` run-config format. Each `[stage]`
/// section appends one schedule stage. Unknown or repeated keys, malformed
/// values and out-of-order stages are errors; parameter ranges are left to
/// validateParams.
RunConfig parseRunConfig(std::string_view text);

/// Canonical text for `config`; parseRunConfig(renderRunConfig(c)) == c.
std::string renderRunConfig(const RunConfig& config);

/// Applies one `key=value` override. Keys are `section.key` or a bare key
/// that names exactly one field; stage keys address stage 0 unless written
/// `stageN.key`. Throws ConfigError.
void applyOverride(RunConfig& config, std::string_view assignment);

/// Shortest decimal text that reads back to the same double.
std::string formatDouble(double x);

}  // namespace snowfake
