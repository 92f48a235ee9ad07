#pragma once

#include "json.hpp"

#include "unaware/transfers.hpp"
#include "unaware/verifier.hpp"

namespace unaware {

/// Report schema. Rationals are exact strings ("p/q"); every rational field
/// has a sibling "<field>_approx" decimal rendering for reading only.
///
///   run:    {scenario, scheme, draw, partial, stages: [{stage, profile, pooled}],
///            stop_stage, outcome, transfers: {agent: r}, adjustments: {agent: r},
///            premium_recipient, operator_balance, utilities: {agent: r}}
///   verify: {scenario, scheme, results: [{property, verdict, counts: {checked},
///            witnesses: [{description, agent, draw, partial, history, play,
///            reference, play_value, reference_value, gap}]}]}
nlohmann::ordered_json transcript_json(const Scenario& scenario, const Transcript& transcript);
nlohmann::ordered_json run_json(const Mechanism& mechanism, const NatureDraw& draw, Level partial, const Transcript& transcript);
nlohmann::ordered_json result_json(const Scenario& scenario, const VerificationResult& result);
nlohmann::ordered_json draw_json(const Scenario& scenario, const NatureDraw& draw);

}  // namespace unaware
