#pragma once

#include <optional>
#include <vector>

#include "unaware/elaboration.hpp"
#include "unaware/rational.hpp"
#include "unaware/scenario.hpp"

namespace unaware {

/// Realized social choice: physical outcome plus transfers paid to agents.
struct TransferReport {
  Outcome outcome = 0;
  Level pooled = 0;
  std::vector<Rational> transfers;
  std::vector<Rational> adjustments;
  std::optional<AgentId> premium_recipient;
  /// Money kept by the mechanism: minus the sum of transfers.
  Rational operator_balance;
};

/// Transfer schemes over one scenario. The awareness premium table is built
/// at construction; afterwards every query is a pure function.
class Mechanism {
 public:
  explicit Mechanism(const Scenario& scenario);
  Mechanism(const Scenario& scenario, SchemeConfig scheme);
  /// The mechanism keeps a pointer to the scenario.
  explicit Mechanism(Scenario&&) = delete;
  Mechanism(Scenario&&, SchemeConfig) = delete;

  const Scenario& scenario() const noexcept { return *scenario_; }
  const SchemeConfig& scheme() const noexcept { return scheme_; }

  /// f0: efficient outcome at the pooled level (rspa: a lowest-cost seller supplies).
  Outcome outcome(const Profile& profile) const;

  /// y_i at the profile's pooled level, evaluated at the opponents' types.
  Rational y(AgentId i, const Profile& profile) const;
  /// Minus opponents' welfare at the outcome chosen without agent i.
  Rational clarke_y(AgentId i, const Profile& profile) const;

  /// rspa helpers.
  bool is_seller(AgentId i) const;
  Rational cost(AgentId seller, TypeId t) const;
  Rational second_lowest_cost(const Profile& profile) const;
  /// 1 when seller i supplies at f0(profile), else 0.
  bool supplies(AgentId i, const Profile& profile) const;

  /// m_i(level) from the precomputed table.
  const Rational& awareness_premium(AgentId i, Level level) const { return premium_.at(i).at(level); }

  /// The unique agent who first reported the final pooled level, if any.
  /// Throws Error("TranscriptNotStopped").
  std::optional<AgentId> first_pooled_reporter(const Transcript& transcript) const;

  std::vector<Rational> adjustments(std::optional<AgentId> recipient, Level pooled) const;
  std::vector<Rational> awareness_adjustment(const Transcript& transcript) const;

  /// Transfers for a final profile given the premium recipient.
  TransferReport settle(const Profile& final_profile, std::optional<AgentId> recipient) const;
  /// Transfers of a stopped transcript under the configured scheme.
  TransferReport transfers(const Transcript& transcript) const;

  /// v_i(outcome, evaluation type) + transfer to i.
  Rational utility(AgentId i, TypeId evaluation_type, const TransferReport& report) const;

 private:
  void build_premiums();
  Rational vcg_premium(AgentId i, Level level) const;
  Rational rspa_premium(AgentId i, Level level, bool simplified) const;

  const Scenario* scenario_;
  SchemeConfig scheme_;
  std::vector<std::vector<Rational>> premium_;  // [agent][level]
};

}  // namespace unaware
