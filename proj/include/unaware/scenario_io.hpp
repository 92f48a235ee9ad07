#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "unaware/scenario.hpp"

namespace unaware {

/// Syntax error at a given line of a scenario text.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : Error("ParseError", source + ":" + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses and fully validates a scenario. Every violation is reported with
/// the line of the section (or entry) it concerns. Throws ParseError or
/// ValidationError.
Scenario parse_scenario(std::string_view text, const std::string& source = "<text>");
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace unaware
