#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "unaware/errors.hpp"
#include "unaware/rational.hpp"
#include "unaware/type_structure.hpp"

namespace unaware {

/// Index of a physical outcome.
using Outcome = std::size_t;

struct OutcomeModelSpec {
  std::vector<std::string> outcomes;
  /// level name -> available outcome names
  std::vector<std::pair<std::string, std::vector<std::string>>> available;
  /// Total order used to break welfare ties; empty means lexicographic by name.
  std::vector<std::string> tie_break;
  /// (agent, type, outcome, value)
  std::vector<std::tuple<std::string, std::string, std::string, Rational>> valuations;
};

/// Level-indexed outcome sets and valuation tables over a type structure.
class OutcomeModel {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Outcome x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Outcome> find(std::string_view name) const;
  Outcome outcome(std::string_view name) const;

  /// Available outcomes at a level, sorted by tie-break priority.
  const std::vector<Outcome>& available(Level level) const { return available_.at(level); }
  bool is_available(Outcome x, Level level) const;
  /// Position in the tie-break order (lower wins ties).
  std::size_t rank(Outcome x) const { return rank_.at(x); }
  const std::vector<Outcome>& tie_break_order() const noexcept { return order_; }

  /// v_i(x, t). Throws Error("MissingValuation").
  const Rational& value(AgentId i, TypeId t, Outcome x) const;
  const std::optional<Rational>& value_entry(AgentId i, TypeId t, Outcome x) const {
    return values_.at(i).at(t).at(x);
  }

  /// Sum over all agents of v_i(x, t_i).
  Rational welfare(Outcome x, const Profile& profile) const;
  /// Sum over agents other than `excluded`.
  Rational welfare_without(AgentId excluded, Outcome x, const Profile& profile) const;

  /// Argmax of welfare over available(level); ties go to the earliest in tie-break order.
  Outcome efficient_outcome(const Profile& profile, Level level) const;
  /// Argmax of opponents' welfare (agent i excluded) over available(level).
  Outcome restricted_efficient_outcome(AgentId i, const Profile& profile, Level level) const;

  friend bool operator==(const OutcomeModel& a, const OutcomeModel& b) {
    return a.names_ == b.names_ && a.available_ == b.available_ && a.order_ == b.order_ &&
           a.values_ == b.values_;
  }

 private:
  friend Validated<OutcomeModel> validate_outcomes(const TypeStructure&, const OutcomeModelSpec&);

  std::vector<std::string> names_;
  std::unordered_map<std::string, Outcome> index_;
  std::vector<std::vector<Outcome>> available_;
  std::vector<Outcome> order_;
  std::vector<std::size_t> rank_;
  std::vector<std::vector<std::vector<std::optional<Rational>>>> values_;  // [agent][type][outcome]
};

/// Checks nonempty availability per level and that v_i(x, t) is given for
/// every outcome available at some level weakly below level_of(t).
/// Violation codes: UnknownOutcome, EmptyAvailability, BadTieBreak,
/// MissingValuation, DuplicateValuation.
Validated<OutcomeModel> validate_outcomes(const TypeStructure& types, const OutcomeModelSpec& candidate);

}  // namespace unaware
