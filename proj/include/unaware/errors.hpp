#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unaware {

/// One violated axiom or domain rule, e.g. {"NotALattice", "a and b have no join"}.
struct Violation {
  std::string code;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error("ValidationError", summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.code + " (" + v.message + ")";
    }
    return out;
  }

  std::vector<Violation> violations_;
};

/// Raised when an exhaustive enumeration would exceed its configured bound.
class StrategySpaceTooLarge : public Error {
 public:
  explicit StrategySpaceTooLarge(const std::string& message)
      : Error("StrategySpaceTooLarge", message) {}
};

/// Either a validated value or the list of violations that prevented it.
template <class T>
struct Validated {
  std::optional<T> value;
  std::vector<Violation> violations;

  bool ok() const noexcept { return value.has_value(); }

  const T& get() const& {
    if (!value) throw ValidationError(violations);
    return *value;
  }
  T get() && {
    if (!value) throw ValidationError(violations);
    return std::move(*value);
  }
};

}  // namespace unaware
