#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unaware/elaboration.hpp"
#include "unaware/scenario.hpp"
#include "unaware/transfers.hpp"

namespace unaware {

/// One counterexample. Fields not meaningful for a property stay empty.
struct Witness {
  std::string description;
  std::optional<AgentId> agent;
  std::optional<NatureDraw> draw;
  std::optional<Level> partial;
  /// Public history at the information set where the comparison is made.
  std::vector<Profile> history;
  /// The offending play (deviation, deficit transcript, truthful run...).
  std::optional<Transcript> play;
  /// The truthful play it is compared with, when there is one.
  std::optional<Transcript> reference;
  /// play_value - reference_value = gap.
  Rational play_value;
  Rational reference_value;
  Rational gap;
};

struct VerificationResult {
  std::string property;
  bool holds = true;
  std::vector<Witness> witnesses;
  std::size_t checked = 0;
};

enum class BudgetMode { balance, no_deficit };
enum class ParticipationMode { ex_post, ex_ante_anticipated };

std::string to_string(BudgetMode mode);
std::string to_string(ParticipationMode mode);

/// Opponent strategies quantified over by the dominance check. `arbitrary`
/// is every strategy profile, history-contingent ones included. `truthful`
/// fixes opponents to truth-telling and elaboration (an ex-post check).
enum class OpponentModel { arbitrary, truthful };

struct VerifierOptions {
  /// Cap on explored game states per check; StrategySpaceTooLarge past it.
  std::size_t bound = 1'000'000;
  /// Witnesses kept per result.
  std::size_t max_witnesses = 5;
  OpponentModel opponents = OpponentModel::arbitrary;
};

/// Outcome rule under test; defaults to the scenario's efficient outcome.
using OutcomeRule = std::function<Outcome(const Profile&, Level)>;

VerificationResult check_efficiency(const Scenario& scenario, const OutcomeRule& rule = {},
                                    const VerifierOptions& options = {});
VerificationResult check_pooled_implementation(const Mechanism& mechanism, const VerifierOptions& options = {});
VerificationResult check_conditional_dominance(const Mechanism& mechanism, const VerifierOptions& options = {});
VerificationResult check_stage_bound(const Scenario& scenario, const VerifierOptions& options = {});
VerificationResult check_budget(const Mechanism& mechanism, BudgetMode mode, const VerifierOptions& options = {});
VerificationResult check_participation(const Mechanism& mechanism, ParticipationMode mode,
                                       const VerifierOptions& options = {});
VerificationResult check_nonnegative_valuations(const Scenario& scenario, const VerifierOptions& options = {});

/// Keys (agent, level, opponents' types) -> g_i^level(t_-i).
using GTable = LevelTable;

/// Rows of one level's system that combine to 0 = nonzero.
struct InfeasibilityCertificate {
  Level level = 0;
  /// Profiles of the level, one per equation, with the combination weights.
  std::vector<std::pair<Profile, Rational>> combination;
  /// Sum of weight * welfare over the combination; nonzero.
  Rational residual;
};

struct HolmstromSolution {
  std::optional<GTable> g;
  std::optional<InfeasibilityCertificate> certificate;
};

/// Solves sum_i g_i(t_-i) = W(f0(t), t) at every level exactly.
HolmstromSolution find_g(const Scenario& scenario);
/// Checks the decomposition; throws Error("DimensionMismatch") if g is missing keys.
VerificationResult check_holmstrom(const Scenario& scenario, const GTable& g);
/// y = -(|I| - 1) g.
LevelTable derive_y_from_g(const Scenario& scenario, const GTable& g);
/// Checks that the certificate really proves infeasibility.
bool verify_certificate(const Scenario& scenario, const InfeasibilityCertificate& certificate);

}  // namespace unaware
