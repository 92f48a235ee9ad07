#include "unaware/report.hpp"

namespace unaware {

namespace {

void put(nlohmann::ordered_json& j, const std::string& key, const Rational& r) {
  j[key] = to_string(r);
  j[key + "_approx"] = to_decimal(r);
}

nlohmann::ordered_json profile_json(const Scenario& sc, const Profile& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (AgentId i = 0; i < p.size(); ++i) j[sc.types.agent_name(i)] = sc.types.type_name(i, p[i]);
  return j;
}

nlohmann::ordered_json per_agent(const Scenario& sc, const std::vector<Rational>& values) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (AgentId i = 0; i < values.size(); ++i) put(j, sc.types.agent_name(i), values[i]);
  return j;
}

}  // namespace

nlohmann::ordered_json draw_json(const Scenario& sc, const NatureDraw& d) {
  nlohmann::ordered_json j;
  j["name"] = d.name;
  j["true_types"] = profile_json(sc, d.true_types);
  nlohmann::ordered_json aw = nlohmann::ordered_json::object();
  for (AgentId i = 0; i < d.awareness.size(); ++i) aw[sc.types.agent_name(i)] = sc.lattice().name(d.awareness[i]);
  j["awareness"] = aw;
  return j;
}

nlohmann::ordered_json transcript_json(const Scenario& sc, const Transcript& t) {
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < t.stages.size(); ++k) {
    stages.push_back({{"stage", k + 1},
                      {"profile", profile_json(sc, t.stages[k])},
                      {"pooled", sc.lattice().name(t.pooled[k])}});
  }
  return {{"stages", stages}, {"stopped", t.stopped}};
}

nlohmann::ordered_json run_json(const Mechanism& mech, const NatureDraw& draw, Level partial, const Transcript& t) {
  const Scenario& sc = mech.scenario();
  const TransferReport rep = mech.transfers(t);
  nlohmann::ordered_json j;
  j["scenario"] = sc.name;
  j["scheme"] = to_string(mech.scheme().kind);
  j["draw"] = draw_json(sc, draw);
  j["partial"] = sc.lattice().name(partial);
  j["stages"] = transcript_json(sc, t)["stages"];
  j["stop_stage"] = t.stage_count();
  j["outcome"] = sc.outcomes.name(rep.outcome);
  j["pooled"] = sc.lattice().name(rep.pooled);
  j["transfers"] = per_agent(sc, rep.transfers);
  j["adjustments"] = per_agent(sc, rep.adjustments);
  j["premium_recipient"] = rep.premium_recipient ? nlohmann::ordered_json(sc.types.agent_name(*rep.premium_recipient))
                                                 : nlohmann::ordered_json(nullptr);
  put(j, "operator_balance", rep.operator_balance);
  // Each agent evaluates at the type she perceives at the end of the play.
  ElaborationEngine engine(sc.types);
  const PlayState end = mech.scheme().kind == SchemeKind::static_vickrey ? engine.start(draw, partial)
                                                                          : engine.replay(draw, partial, t);
  std::vector<Rational> utilities;
  for (AgentId i = 0; i < sc.agent_count(); ++i) utilities.push_back(mech.utility(i, end.info[i].perceived, rep));
  j["utilities"] = per_agent(sc, utilities);
  return j;
}

nlohmann::ordered_json result_json(const Scenario& sc, const VerificationResult& r) {
  nlohmann::ordered_json j;
  j["property"] = r.property;
  j["verdict"] = r.holds ? "holds" : "fails";
  j["counts"] = {{"checked", r.checked}, {"witnesses", r.witnesses.size()}};
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::ordered_json x;
    x["description"] = w.description;
    if (w.agent) x["agent"] = sc.types.agent_name(*w.agent);
    if (w.draw) x["draw"] = draw_json(sc, *w.draw);
    if (w.partial) x["partial"] = sc.lattice().name(*w.partial);
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const auto& p : w.history) hist.push_back(profile_json(sc, p));
    x["history"] = hist;
    if (w.play) x["play"] = transcript_json(sc, *w.play);
    if (w.reference) x["reference"] = transcript_json(sc, *w.reference);
    put(x, "play_value", w.play_value);
    put(x, "reference_value", w.reference_value);
    put(x, "gap", w.gap);
    ws.push_back(x);
  }
  j["witnesses"] = ws;
  return j;
}

}  // namespace unaware
