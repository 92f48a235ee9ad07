#include "unaware/outcome_model.hpp"

#include <algorithm>
#include <set>

namespace unaware {

std::optional<Outcome> OutcomeModel::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Outcome OutcomeModel::outcome(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw Error("UnknownOutcome", "'" + std::string(name) + "'");
}

bool OutcomeModel::is_available(Outcome x, Level level) const {
  const auto& av = available_.at(level);
  return std::find(av.begin(), av.end(), x) != av.end();
}

const Rational& OutcomeModel::value(AgentId i, TypeId t, Outcome x) const {
  const auto& entry = values_.at(i).at(t).at(x);
  if (!entry) {
    throw Error("MissingValuation", "agent #" + std::to_string(i) + ", type #" + std::to_string(t) +
                                        ", outcome '" + names_.at(x) + "'");
  }
  return *entry;
}

Rational OutcomeModel::welfare(Outcome x, const Profile& profile) const {
  Rational sum = 0;
  for (AgentId i = 0; i < profile.size(); ++i) sum += value(i, profile[i], x);
  return sum;
}

Rational OutcomeModel::welfare_without(AgentId excluded, Outcome x, const Profile& profile) const {
  Rational sum = 0;
  for (AgentId i = 0; i < profile.size(); ++i)
    if (i != excluded) sum += value(i, profile[i], x);
  return sum;
}

Outcome OutcomeModel::efficient_outcome(const Profile& profile, Level level) const {
  const auto& av = available(level);
  Outcome best = av.front();
  Rational best_w = welfare(best, profile);
  for (std::size_t k = 1; k < av.size(); ++k) {
    Rational w = welfare(av[k], profile);
    if (w > best_w) {
      best = av[k];
      best_w = std::move(w);
    }
  }
  return best;
}

Outcome OutcomeModel::restricted_efficient_outcome(AgentId i, const Profile& profile, Level level) const {
  const auto& av = available(level);
  Outcome best = av.front();
  Rational best_w = welfare_without(i, best, profile);
  for (std::size_t k = 1; k < av.size(); ++k) {
    Rational w = welfare_without(i, av[k], profile);
    if (w > best_w) {
      best = av[k];
      best_w = std::move(w);
    }
  }
  return best;
}

Validated<OutcomeModel> validate_outcomes(const TypeStructure& types, const OutcomeModelSpec& candidate) {
  Validated<OutcomeModel> result;
  auto& violations = result.violations;
  const auto& lattice = types.lattice();
  OutcomeModel m;
  m.names_ = candidate.outcomes;
  for (Outcome x = 0; x < m.names_.size(); ++x) {
    if (!m.index_.emplace(m.names_[x], x).second) {
      violations.push_back({"DuplicateOutcome", "'" + m.names_[x] + "'"});
    }
  }
  if (m.names_.empty()) violations.push_back({"EmptyAvailability", "no outcomes declared"});
  if (!violations.empty()) return result;

  if (candidate.tie_break.empty()) {
    m.order_.resize(m.size());
    for (Outcome x = 0; x < m.size(); ++x) m.order_[x] = x;
    std::sort(m.order_.begin(), m.order_.end(), [&](Outcome a, Outcome b) { return m.names_[a] < m.names_[b]; });
  } else {
    std::set<Outcome> seen;
    for (const auto& name : candidate.tie_break) {
      const auto x = m.find(name);
      if (!x) {
        violations.push_back({"UnknownOutcome", "tie-break names '" + name + "'"});
      } else if (!seen.insert(*x).second) {
        violations.push_back({"BadTieBreak", "'" + name + "' listed twice"});
      } else {
        m.order_.push_back(*x);
      }
    }
    if (violations.empty() && m.order_.size() != m.size()) {
      violations.push_back({"BadTieBreak", "tie-break order must list every outcome exactly once"});
    }
  }
  if (!violations.empty()) return result;
  m.rank_.assign(m.size(), 0);
  for (std::size_t r = 0; r < m.order_.size(); ++r) m.rank_[m.order_[r]] = r;

  m.available_.assign(lattice.size(), {});
  for (const auto& [lname, outs] : candidate.available) {
    const auto level = lattice.find(lname);
    if (!level) {
      violations.push_back({"UnknownLevel", "availability for '" + lname + "'"});
      continue;
    }
    for (const auto& oname : outs) {
      const auto x = m.find(oname);
      if (!x) {
        violations.push_back({"UnknownOutcome", "'" + oname + "' available at '" + lname + "'"});
      } else if (!m.is_available(*x, *level)) {
        m.available_[*level].push_back(*x);
      }
    }
  }
  for (Level l = 0; l < lattice.size(); ++l) {
    std::sort(m.available_[l].begin(), m.available_[l].end(),
              [&](Outcome a, Outcome b) { return m.rank_[a] < m.rank_[b]; });
    if (m.available_[l].empty()) {
      violations.push_back({"EmptyAvailability", "no outcome available at level '" + lattice.name(l) + "'"});
    }
  }
  if (!violations.empty()) return result;

  m.values_.resize(types.agent_count());
  for (AgentId i = 0; i < types.agent_count(); ++i) {
    m.values_[i].assign(types.type_count(i), std::vector<std::optional<Rational>>(m.size()));
  }
  for (const auto& [aname, tname, oname, value] : candidate.valuations) {
    const auto i = types.find_agent(aname);
    if (!i) {
      violations.push_back({"UnknownAgent", "valuation for '" + aname + "'"});
      continue;
    }
    const auto t = types.find_type(*i, tname);
    const auto x = m.find(oname);
    if (!t || !x) {
      violations.push_back({!t ? "UnknownType" : "UnknownOutcome",
                            "valuation (" + aname + ", " + tname + ", " + oname + ")"});
      continue;
    }
    auto& slot = m.values_[*i][*t][*x];
    if (slot && *slot != value) {
      violations.push_back({"DuplicateValuation", "(" + aname + ", " + tname + ", " + oname + ") given twice"});
    }
    slot = value;
  }

  for (AgentId i = 0; i < types.agent_count(); ++i) {
    for (TypeId t = 0; t < types.type_count(i); ++t) {
      std::vector<char> needed(m.size(), 0);
      for (Level l : lattice.down_set(types.level_of(i, t)))
        for (Outcome x : m.available_[l]) needed[x] = 1;
      for (Outcome x = 0; x < m.size(); ++x) {
        if (needed[x] && !m.values_[i][t][x]) {
          violations.push_back({"MissingValuation", "agent '" + types.agent_name(i) + "', type '" +
                                                        types.type_name(i, t) + "', outcome '" + m.names_[x] + "'"});
        }
      }
    }
  }
  if (!violations.empty()) return result;

  result.value = std::move(m);
  return result;
}

}  // namespace unaware
