#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "unaware/errors.hpp"
#include "unaware/scenario.hpp"
#include "unaware/type_structure.hpp"

namespace unaware {

/// Sequence of reported profiles t^1..t^n with the pooled level of each.
struct Transcript {
  std::vector<Profile> stages;
  std::vector<Level> pooled;
  /// True once the last two profiles coincide (or for one-shot static plays).
  bool stopped = false;

  std::size_t stage_count() const noexcept { return stages.size(); }
  const Profile& final_profile() const { return stages.back(); }
  Level final_pooled() const { return pooled.back(); }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// What agent `owner` knows when asked to report: her perceived type,
/// already elaborated to her current awareness, and the public history.
struct InformationSet {
  AgentId owner = 0;
  TypeId perceived = 0;
  std::vector<Profile> history;

  std::size_t stage() const noexcept { return history.size() + 1; }
  friend bool operator==(const InformationSet&, const InformationSet&) = default;
};

/// Behavioral strategy: a report rule evaluated lazily on reached information sets.
using Strategy = std::function<TypeId(const InformationSet&)>;

/// Reports allowed by the protocol for one agent. At stage 1 (no previous
/// report): every type at a level below `awareness`. Later: elaborations of
/// the previous report at levels between the previous pooled level and
/// `awareness`.
std::vector<TypeId> feasible_set(const TypeStructure& types, AgentId i, std::optional<TypeId> previous_report,
                                 Level previous_pooled, Level awareness);

/// Running state of one play of the `partial`-partial game.
struct PlayState {
  NatureDraw draw;
  Level partial = 0;
  Transcript transcript;
  /// Information sets for the next stage, one per agent.
  std::vector<InformationSet> info;
};

class InfeasibleReport : public Error {
 public:
  InfeasibleReport(AgentId agent, const std::string& message)
      : Error("InfeasibleReport", message), agent_(agent) {}
  AgentId agent() const noexcept { return agent_; }

 private:
  AgentId agent_;
};

/// Executes the dynamic direct elaboration protocol: report, pool awareness,
/// broadcast the pooled level, elaborate, stop on a repeated profile.
class ElaborationEngine {
 public:
  explicit ElaborationEngine(const TypeStructure& types) : types_(&types) {}

  const TypeStructure& types() const noexcept { return *types_; }

  std::vector<TypeId> feasible_reports(const InformationSet& h) const;
  TypeId truth_telling(const InformationSet& h) const { return h.perceived; }

  /// Initial information sets: each agent perceives her true type projected
  /// to (awareness meet partial).
  PlayState start(const NatureDraw& draw, Level partial) const;

  /// Appends a profile, pools awareness and elaborates every agent's
  /// perceived type. Throws InfeasibleReport.
  void advance(PlayState& state, const Profile& reports) const;

  Transcript run(const NatureDraw& draw, Level partial, const std::vector<Strategy>& strategies) const;
  Transcript run_truthful(const NatureDraw& draw, Level partial) const;
  /// One stage of truthful reports without feedback (static mechanism).
  Transcript run_static(const NatureDraw& draw, Level partial) const;

  /// All plays reachable from `at` when agent i may use any strategy
  /// consistent with her information set there and the others follow
  /// `strategies` (entry i is ignored). Throws StrategySpaceTooLarge past `bound`.
  std::vector<Transcript> enumerate_deviation_plays(AgentId i, const PlayState& at,
                                                    const std::vector<Strategy>& strategies,
                                                    std::size_t bound = kDefaultBound) const;

  /// Checks every report of a transcript against the protocol under a draw.
  /// Returns the final state; throws InfeasibleReport on the first violation.
  PlayState replay(const NatureDraw& draw, Level partial, const Transcript& transcript) const;

  static constexpr std::size_t kDefaultBound = 1'000'000;

 private:
  const TypeStructure* types_;
};

/// Everyone plays the truth-telling and elaboration strategy.
std::vector<Strategy> truthful_strategies(std::size_t agents);

/// Reports `script[stage - 1]` while the script lasts, then tells the truth.
Strategy scripted_strategy(std::vector<TypeId> script);

}  // namespace unaware
