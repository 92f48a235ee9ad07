#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "unaware/lattice.hpp"
#include "unaware/outcome_model.hpp"
#include "unaware/rational.hpp"
#include "unaware/type_structure.hpp"

namespace unaware {

enum class SchemeKind {
  groves,          ///< VCG with scenario-supplied y tables
  clarke,          ///< VCG with pivot y derived from the restricted outcome
  rspa,            ///< reverse second-price auction with a buyer sink
  static_vickrey,  ///< one-shot Clarke on stage-1 reports, no awareness feedback
};

std::string to_string(SchemeKind kind);
/// Accepts "groves", "clarke", "rspa", "static-vickrey" / "static_vickrey".
SchemeKind parse_scheme_kind(std::string_view text);

/// Key of a y (or g) table entry: agent, level, opponents' types in agent order.
using OpponentKey = std::tuple<AgentId, Level, Profile>;
using LevelTable = std::map<OpponentKey, Rational>;

/// Opponents' part of a profile, i.e. the profile with agent i removed.
Profile opponents_of(const Profile& profile, AgentId i);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::clarke;
  /// groves only; entries override y_default.
  LevelTable y;
  std::optional<Rational> y_default;
  /// rspa only.
  std::optional<AgentId> buyer;
  /// rspa: outcome meaning "seller i supplies", indexed by agent (buyer entry empty).
  std::vector<std::optional<Outcome>> supplies;
  /// rspa: use the simplified premium recursion (cross-checked against the general one).
  bool rspa_opt_out = false;
  /// When false the awareness adjustments are dropped (ablation for diagnostics).
  bool awareness_premium = true;

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Complete economic environment: lattice, types, outcomes, valuations,
/// transfer scheme and named nature draws.
struct Scenario {
  std::string name;
  TypeStructure types;
  OutcomeModel outcomes;
  SchemeConfig scheme;
  std::vector<NatureDraw> draws;

  const AwarenessLattice& lattice() const noexcept { return types.lattice(); }
  std::size_t agent_count() const noexcept { return types.agent_count(); }

  const NatureDraw& draw(std::string_view name) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.types == b.types && a.outcomes == b.outcomes && a.scheme == b.scheme &&
           a.draws == b.draws;
  }
};

/// Checks the scheme section against the scenario (complete groves y table,
/// rspa procurement context). Violation codes: MissingYEntry, MissingBuyer,
/// NotProcurementContext, FewerThanTwoSellers.
std::vector<Violation> validate_scheme(const Scenario& scenario, const SchemeConfig& scheme);

/// Returns a copy with a different scheme, validated.
Scenario with_scheme(const Scenario& scenario, SchemeConfig scheme);

}  // namespace unaware
