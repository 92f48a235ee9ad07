#include "unaware/elaboration.hpp"

#include <algorithm>

namespace unaware {

std::vector<TypeId> feasible_set(const TypeStructure& types, AgentId i, std::optional<TypeId> previous_report,
                                 Level previous_pooled, Level awareness) {
  const auto& lattice = types.lattice();
  if (!previous_report) return types.types_below(i, awareness);
  std::vector<TypeId> out;
  for (TypeId u = 0; u < types.type_count(i); ++u) {
    const Level lu = types.level_of(i, u);
    if (lattice.leq(previous_pooled, lu) && lattice.leq(lu, awareness) && types.elaborates(i, u, *previous_report)) {
      out.push_back(u);
    }
  }
  return out;
}

std::vector<TypeId> ElaborationEngine::feasible_reports(const InformationSet& h) const {
  const TypeStructure& ts = *types_;
  const Level aware = ts.level_of(h.owner, h.perceived);
  if (h.history.empty()) return feasible_set(ts, h.owner, std::nullopt, ts.lattice().bottom(), aware);
  const Profile& last = h.history.back();
  return feasible_set(ts, h.owner, last.at(h.owner), ts.pooled_level(last), aware);
}

PlayState ElaborationEngine::start(const NatureDraw& draw, Level partial) const {
  types_->check_draw(draw);
  PlayState state;
  state.draw = draw;
  state.partial = partial;
  for (AgentId i = 0; i < types_->agent_count(); ++i) {
    state.info.push_back({i, types_->perceived_type(i, draw, partial).first, {}});
  }
  return state;
}

void ElaborationEngine::advance(PlayState& state, const Profile& reports) const {
  const TypeStructure& ts = *types_;
  const auto& lattice = ts.lattice();
  if (state.transcript.stopped) throw Error("TranscriptStopped", "the mechanism already stopped");
  if (reports.size() != ts.agent_count()) throw Error("BadProfile", "one report per agent expected");
  for (AgentId i = 0; i < reports.size(); ++i) {
    const auto feasible = feasible_reports(state.info[i]);
    if (std::find(feasible.begin(), feasible.end(), reports[i]) == feasible.end()) {
      throw InfeasibleReport(i, "agent '" + ts.agent_name(i) + "' cannot report '" +
                                    (reports[i] < ts.type_count(i) ? ts.type_name(i, reports[i]) : "?") +
                                    "' at stage " + std::to_string(state.info[i].stage()));
    }
  }
  auto& tr = state.transcript;
  const bool repeated = !tr.stages.empty() && tr.stages.back() == reports;
  const Level pooled = ts.pooled_level(reports);
  tr.stages.push_back(reports);
  tr.pooled.push_back(pooled);
  tr.stopped = repeated;
  for (AgentId i = 0; i < reports.size(); ++i) {
    auto& h = state.info[i];
    const Level aware = lattice.join(ts.level_of(i, h.perceived), pooled);
    h.perceived = ts.project(i, state.draw.true_types[i], aware);
    h.history.push_back(reports);
  }
}

Transcript ElaborationEngine::run(const NatureDraw& draw, Level partial, const std::vector<Strategy>& strategies) const {
  PlayState state = start(draw, partial);
  while (!state.transcript.stopped) {
    Profile reports(types_->agent_count());
    for (AgentId i = 0; i < reports.size(); ++i) reports[i] = strategies.at(i)(state.info[i]);
    advance(state, reports);
  }
  return state.transcript;
}

Transcript ElaborationEngine::run_truthful(const NatureDraw& draw, Level partial) const {
  return run(draw, partial, truthful_strategies(types_->agent_count()));
}

Transcript ElaborationEngine::run_static(const NatureDraw& draw, Level partial) const {
  PlayState state = start(draw, partial);
  Profile reports(types_->agent_count());
  for (AgentId i = 0; i < reports.size(); ++i) reports[i] = state.info[i].perceived;
  advance(state, reports);
  state.transcript.stopped = true;
  return state.transcript;
}

std::vector<Transcript> ElaborationEngine::enumerate_deviation_plays(AgentId i, const PlayState& at,
                                                                     const std::vector<Strategy>& strategies,
                                                                     std::size_t bound) const {
  std::vector<Transcript> out;
  std::function<void(const PlayState&)> visit = [&](const PlayState& state) {
    if (state.transcript.stopped) {
      if (out.size() >= bound) {
        throw StrategySpaceTooLarge("more than " + std::to_string(bound) + " deviation plays");
      }
      out.push_back(state.transcript);
      return;
    }
    Profile reports(types_->agent_count());
    for (AgentId j = 0; j < reports.size(); ++j)
      if (j != i) reports[j] = strategies.at(j)(state.info[j]);
    for (TypeId r : feasible_reports(state.info[i])) {
      PlayState next = state;
      reports[i] = r;
      advance(next, reports);
      visit(next);
    }
  };
  visit(at);
  return out;
}

PlayState ElaborationEngine::replay(const NatureDraw& draw, Level partial, const Transcript& transcript) const {
  PlayState state = start(draw, partial);
  for (const auto& profile : transcript.stages) {
    if (state.transcript.stopped) throw Error("TranscriptStopped", "profiles after the stop");
    advance(state, profile);
  }
  return state;
}

std::vector<Strategy> truthful_strategies(std::size_t agents) {
  return std::vector<Strategy>(agents, [](const InformationSet& h) { return h.perceived; });
}

Strategy scripted_strategy(std::vector<TypeId> script) {
  return [script = std::move(script)](const InformationSet& h) {
    const std::size_t k = h.history.size();
    return k < script.size() ? script[k] : h.perceived;
  };
}

}  // namespace unaware
