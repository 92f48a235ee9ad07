#include "unaware/transfers.hpp"

#include <algorithm>

namespace unaware {

Mechanism::Mechanism(const Scenario& scenario) : Mechanism(scenario, scenario.scheme) {}

Mechanism::Mechanism(const Scenario& scenario, SchemeConfig scheme)
    : scenario_(&scenario), scheme_(std::move(scheme)) {
  auto violations = validate_scheme(scenario, scheme_);
  if (!violations.empty()) throw ValidationError(violations);
  build_premiums();
}

Outcome Mechanism::outcome(const Profile& profile) const {
  const auto& types = scenario_->types;
  if (scheme_.kind != SchemeKind::rspa) {
    return scenario_->outcomes.efficient_outcome(profile, types.pooled_level(profile));
  }
  std::optional<AgentId> best;
  Rational best_cost;
  for (AgentId i = 0; i < profile.size(); ++i) {
    if (!is_seller(i)) continue;
    Rational c = cost(i, profile[i]);
    const auto& om = scenario_->outcomes;
    if (!best || c < best_cost ||
        (c == best_cost && om.rank(*scheme_.supplies[i]) < om.rank(*scheme_.supplies[*best]))) {
      best = i;
      best_cost = std::move(c);
    }
  }
  return *scheme_.supplies[*best];
}

Rational Mechanism::clarke_y(AgentId i, const Profile& profile) const {
  const auto& om = scenario_->outcomes;
  const Outcome without = om.restricted_efficient_outcome(i, profile, scenario_->types.pooled_level(profile));
  return -om.welfare_without(i, without, profile);
}

Rational Mechanism::y(AgentId i, const Profile& profile) const {
  switch (scheme_.kind) {
    case SchemeKind::clarke:
    case SchemeKind::static_vickrey:
      return clarke_y(i, profile);
    case SchemeKind::groves: {
      const auto it = scheme_.y.find({i, scenario_->types.pooled_level(profile), opponents_of(profile, i)});
      if (it != scheme_.y.end()) return it->second;
      if (scheme_.y_default) return *scheme_.y_default;
      throw Error("MissingYEntry", "agent '" + scenario_->types.agent_name(i) + "' at " +
                                       scenario_->types.describe(profile));
    }
    case SchemeKind::rspa:
      return 0;
  }
  return 0;
}

bool Mechanism::is_seller(AgentId i) const {
  return scheme_.kind == SchemeKind::rspa && scheme_.buyer && i != *scheme_.buyer;
}

Rational Mechanism::cost(AgentId seller, TypeId t) const {
  return -scenario_->outcomes.value(seller, t, *scheme_.supplies.at(seller));
}

Rational Mechanism::second_lowest_cost(const Profile& profile) const {
  std::vector<Rational> costs;
  for (AgentId i = 0; i < profile.size(); ++i)
    if (is_seller(i)) costs.push_back(cost(i, profile[i]));
  if (costs.size() < 2) throw Error("FewerThanTwoSellers", "c_(2) needs two sellers");
  std::sort(costs.begin(), costs.end());
  return costs[1];
}

bool Mechanism::supplies(AgentId i, const Profile& profile) const {
  return is_seller(i) && outcome(profile) == *scheme_.supplies[i];
}

std::optional<AgentId> Mechanism::first_pooled_reporter(const Transcript& transcript) const {
  if (!transcript.stopped || transcript.stages.empty()) {
    throw Error("TranscriptNotStopped", "transfers need a stopped transcript");
  }
  const auto& types = scenario_->types;
  const Level final_level = types.pooled_level(transcript.final_profile());
  for (const auto& profile : transcript.stages) {
    std::optional<AgentId> found;
    std::size_t count = 0;
    for (AgentId i = 0; i < profile.size(); ++i) {
      if (types.level_of(i, profile[i]) == final_level) {
        found = i;
        ++count;
      }
    }
    if (count == 1) return found;
    if (count > 1) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Rational> Mechanism::adjustments(std::optional<AgentId> recipient, Level pooled) const {
  const std::size_t n = scenario_->agent_count();
  std::vector<Rational> a(n, Rational(0));
  if (!recipient || !scheme_.awareness_premium || n < 2) return a;
  switch (scheme_.kind) {
    case SchemeKind::groves:
    case SchemeKind::clarke: {
      const Rational& m = awareness_premium(*recipient, pooled);
      const Rational share = m / Rational(static_cast<long>(n - 1));
      for (AgentId i = 0; i < n; ++i) a[i] = (i == *recipient) ? m : -share;
      break;
    }
    case SchemeKind::rspa:
      if (is_seller(*recipient)) a[*recipient] = awareness_premium(*recipient, pooled);
      break;
    case SchemeKind::static_vickrey:
      break;
  }
  return a;
}

std::vector<Rational> Mechanism::awareness_adjustment(const Transcript& transcript) const {
  const auto recipient = first_pooled_reporter(transcript);
  return adjustments(recipient, scenario_->types.pooled_level(transcript.final_profile()));
}

TransferReport Mechanism::settle(const Profile& final_profile, std::optional<AgentId> recipient) const {
  const auto& om = scenario_->outcomes;
  const std::size_t n = scenario_->agent_count();
  TransferReport r;
  r.pooled = scenario_->types.pooled_level(final_profile);
  r.outcome = outcome(final_profile);
  r.premium_recipient = recipient;
  r.adjustments = adjustments(recipient, r.pooled);
  r.transfers.assign(n, Rational(0));
  if (scheme_.kind == SchemeKind::rspa) {
    const Rational c2 = second_lowest_cost(final_profile);
    Rational paid_out = 0;
    for (AgentId i = 0; i < n; ++i) {
      if (!is_seller(i)) continue;
      if (r.outcome == *scheme_.supplies[i]) r.transfers[i] = c2;
      r.transfers[i] += r.adjustments[i];
      paid_out += r.adjustments[i];
    }
    r.transfers[*scheme_.buyer] = -c2 - paid_out;
  } else {
    for (AgentId i = 0; i < n; ++i) {
      r.transfers[i] = om.welfare_without(i, r.outcome, final_profile) + y(i, final_profile) + r.adjustments[i];
    }
  }
  r.operator_balance = 0;
  for (const auto& f : r.transfers) r.operator_balance -= f;
  return r;
}

TransferReport Mechanism::transfers(const Transcript& transcript) const {
  if (scheme_.kind == SchemeKind::static_vickrey) {
    if (transcript.stages.empty()) throw Error("TranscriptNotStopped", "empty transcript");
    return settle(transcript.final_profile(), std::nullopt);
  }
  return settle(transcript.final_profile(), first_pooled_reporter(transcript));
}

Rational Mechanism::utility(AgentId i, TypeId evaluation_type, const TransferReport& report) const {
  return scenario_->outcomes.value(i, evaluation_type, report.outcome) + report.transfers.at(i);
}

void Mechanism::build_premiums() {
  const auto& lattice = scenario_->lattice();
  const std::size_t n = scenario_->agent_count();
  premium_.assign(n, std::vector<Rational>(lattice.size(), Rational(0)));
  if (scheme_.kind == SchemeKind::static_vickrey) return;

  std::vector<Level> order(lattice.size());
  for (Level l = 0; l < lattice.size(); ++l) order[l] = l;
  std::sort(order.begin(), order.end(), [&](Level a, Level b) {
    return lattice.down_set(a).size() < lattice.down_set(b).size();
  });
  for (AgentId i = 0; i < n; ++i) {
    for (Level l : order) {
      if (l == lattice.bottom()) continue;
      if (scheme_.kind == SchemeKind::rspa) {
        if (!is_seller(i)) continue;
        premium_[i][l] = rspa_premium(i, l, false);
        if (scheme_.rspa_opt_out) {
          const Rational simple = rspa_premium(i, l, true);
          if (simple != premium_[i][l]) {
            throw Error("PremiumMismatch", "simplified rspa premium of seller '" + scenario_->types.agent_name(i) +
                                               "' at '" + lattice.name(l) + "' is " + to_string(simple) +
                                               " but the general recursion gives " + to_string(premium_[i][l]));
          }
        }
      } else {
        premium_[i][l] = vcg_premium(i, l);
      }
    }
  }
}

// max over l' < l, t' in T^l', t in T^l of
//   m(l') + v_i(f0(t'), t_i) + sum_{j!=i} v_j(f0(t'), t'_j) + y_i(t') - W(t) - y_i(t), floored at 0.
// Only t_i couples the two halves, so maximize per fine own type.
Rational Mechanism::vcg_premium(AgentId i, Level level) const {
  const auto& types = scenario_->types;
  const auto& om = scenario_->outcomes;
  const auto& lattice = scenario_->lattice();
  const auto& own = types.space(i, level);

  std::vector<std::optional<Rational>> gain(types.type_count(i));
  for (Level lower : lattice.strictly_below(level)) {
    const Rational& m_lower = premium_[i][lower];
    types.for_each_profile(lower, [&](const Profile& tp) {
      const Outcome x = outcome(tp);
      const Rational rest = m_lower + om.welfare_without(i, x, tp) + y(i, tp);
      for (TypeId ti : own) {
        Rational g = rest + om.value(i, ti, x);
        if (!gain[ti] || g > *gain[ti]) gain[ti] = std::move(g);
      }
    });
  }
  std::vector<std::optional<Rational>> loss(types.type_count(i));
  types.for_each_profile(level, [&](const Profile& t) {
    Rational b = om.welfare(outcome(t), t) + y(i, t);
    auto& slot = loss[t[i]];
    if (!slot || b < *slot) slot = std::move(b);
  });
  Rational best = 0;
  for (TypeId ti : own) {
    if (gain[ti] && loss[ti] && *gain[ti] - *loss[ti] > best) best = *gain[ti] - *loss[ti];
  }
  return best;
}

// max over l' < l, t' in T^l', t in T^l of
//   m(l') + I_i(t')(c_(2)(t') - c_i(t_i)) - I_i(t)(c_(2)(t) - c_i(t_i)), floored at 0,
// with the cost always taken at the own fine type t_i. Split per t_i as for Clarke.
Rational Mechanism::rspa_premium(AgentId i, Level level, bool simplified) const {
  const auto& types = scenario_->types;
  const auto& lattice = scenario_->lattice();
  const auto& own = types.space(i, level);

  std::vector<std::optional<Rational>> gain(types.type_count(i));
  for (Level lower : lattice.strictly_below(level)) {
    const Rational& m_lower = premium_[i][lower];
    types.for_each_profile(lower, [&](const Profile& tp) {
      const bool wins = supplies(i, tp);
      const Rational price = wins ? second_lowest_cost(tp) : Rational(0);
      for (TypeId ti : own) {
        Rational g = wins ? m_lower + price - cost(i, ti) : m_lower;
        if (!gain[ti] || g > *gain[ti]) gain[ti] = std::move(g);
      }
    });
  }
  std::vector<std::optional<Rational>> loss(types.type_count(i));
  if (!simplified) {
    types.for_each_profile(level, [&](const Profile& t) {
      Rational b = supplies(i, t) ? second_lowest_cost(t) - cost(i, t[i]) : Rational(0);
      auto& slot = loss[t[i]];
      if (!slot || b < *slot) slot = std::move(b);
    });
  }
  std::optional<Rational> best;
  for (TypeId ti : own) {
    if (!gain[ti]) continue;
    Rational v = *gain[ti] - (simplified ? Rational(0) : loss[ti].value_or(0));
    if (!best || v > *best) best = std::move(v);
  }
  Rational value = best.value_or(0);
  if (!simplified && value < 0) value = 0;
  return value;
}

}  // namespace unaware
