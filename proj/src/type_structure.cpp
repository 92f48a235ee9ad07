#include "unaware/type_structure.hpp"

#include <algorithm>
#include <map>

namespace unaware {

std::optional<AgentId> TypeStructure::find_agent(std::string_view name) const {
  const auto it = agent_index_.find(std::string(name));
  if (it == agent_index_.end()) return std::nullopt;
  return it->second;
}

AgentId TypeStructure::agent(std::string_view name) const {
  if (auto a = find_agent(name)) return *a;
  throw Error("UnknownAgent", "'" + std::string(name) + "'");
}

std::optional<TypeId> TypeStructure::find_type(AgentId i, std::string_view name) const {
  const auto& index = type_index_.at(i);
  const auto it = index.find(std::string(name));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TypeId TypeStructure::type(AgentId i, std::string_view name) const {
  if (auto t = find_type(i, name)) return *t;
  throw Error("UnknownType", "agent '" + agents_.at(i) + "' has no type '" + std::string(name) + "'");
}

TypeId TypeStructure::project(AgentId i, TypeId t, Level target) const {
  const TypeId r = proj_.at(i).at(t).at(target);
  if (r == kNone) {
    throw Error("LevelNotBelow", "level '" + lattice_.name(target) + "' is not below '" +
                                     lattice_.name(level_of(i, t)) + "' of type '" + type_name(i, t) + "'");
  }
  return r;
}

bool TypeStructure::elaborates(AgentId i, TypeId u, TypeId t) const {
  return proj_[i][u][level_of(i, t)] == t;
}

std::vector<TypeId> TypeStructure::upset(AgentId i, TypeId t) const {
  std::vector<TypeId> out;
  for (TypeId u = 0; u < type_count(i); ++u)
    if (elaborates(i, u, t)) out.push_back(u);
  return out;
}

Level TypeStructure::pooled_level(const Profile& profile) const {
  Level pooled = lattice_.bottom();
  for (AgentId i = 0; i < profile.size(); ++i) pooled = lattice_.join(pooled, level_of(i, profile[i]));
  return pooled;
}

Profile TypeStructure::project_profile(const Profile& profile, Level target) const {
  Profile out(profile.size());
  for (AgentId i = 0; i < profile.size(); ++i) out[i] = project(i, profile[i], target);
  return out;
}

std::pair<TypeId, Level> TypeStructure::perceived_type(AgentId i, const NatureDraw& draw, Level partial) const {
  const Level aware = lattice_.meet(draw.awareness.at(i), partial);
  return {project(i, draw.true_types.at(i), aware), aware};
}

void TypeStructure::for_each_profile(Level level, const std::function<void(const Profile&)>& visit) const {
  const std::size_t n = agent_count();
  Profile p(n);
  std::vector<std::size_t> idx(n, 0);
  for (AgentId i = 0; i < n; ++i) p[i] = spaces_[i][level][0];
  while (true) {
    visit(p);
    std::size_t k = 0;
    for (; k < n; ++k) {
      const auto& sp = spaces_[k][level];
      if (++idx[k] < sp.size()) {
        p[k] = sp[idx[k]];
        break;
      }
      idx[k] = 0;
      p[k] = sp[0];
    }
    if (k == n) return;
  }
}

std::vector<Profile> TypeStructure::profiles(Level level) const {
  std::vector<Profile> out;
  for_each_profile(level, [&](const Profile& p) { out.push_back(p); });
  return out;
}

std::size_t TypeStructure::profile_count(Level level) const {
  std::size_t count = 1;
  for (AgentId i = 0; i < agent_count(); ++i) count *= spaces_[i][level].size();
  return count;
}

std::vector<TypeId> TypeStructure::types_below(AgentId i, Level level) const {
  std::vector<TypeId> out;
  for (TypeId t = 0; t < type_count(i); ++t)
    if (lattice_.leq(level_of(i, t), level)) out.push_back(t);
  return out;
}

std::string TypeStructure::describe(const Profile& profile) const {
  std::string s = "(";
  for (AgentId i = 0; i < profile.size(); ++i) {
    if (i) s += ", ";
    s += type_name(i, profile[i]);
  }
  return s + ")";
}

void TypeStructure::check_draw(const NatureDraw& draw) const {
  std::vector<Violation> v;
  if (draw.true_types.size() != agent_count() || draw.awareness.size() != agent_count()) {
    v.push_back({"BadDraw", "draw '" + draw.name + "' must give one type and one level per agent"});
  } else {
    for (AgentId i = 0; i < agent_count(); ++i) {
      if (draw.true_types[i] >= type_count(i) || level_of(i, draw.true_types[i]) != lattice_.top()) {
        v.push_back({"BadDraw", "draw '" + draw.name + "': true type of agent '" + agents_[i] +
                                    "' must lie in the top-level space"});
      }
      if (draw.awareness[i] >= lattice_.size()) {
        v.push_back({"BadDraw", "draw '" + draw.name + "': unknown awareness level"});
      }
    }
  }
  if (!v.empty()) throw ValidationError(v);
}

Validated<TypeStructure> validate_structure(const AwarenessLattice& lattice, const TypeStructureSpec& candidate) {
  Validated<TypeStructure> result;
  auto& violations = result.violations;
  TypeStructure ts;
  ts.lattice_ = lattice;
  ts.agents_ = candidate.agents;
  const std::size_t n = ts.agents_.size();
  const std::size_t levels = lattice.size();
  if (n == 0) violations.push_back({"UnknownAgent", "no agents declared"});
  for (AgentId i = 0; i < n; ++i) {
    if (!ts.agent_index_.emplace(ts.agents_[i], i).second) {
      violations.push_back({"DuplicateAgent", "'" + ts.agents_[i] + "'"});
    }
  }
  if (candidate.types.size() != n || candidate.projections.size() != n) {
    violations.push_back({"UnknownAgent", "types/projections must be given per declared agent"});
  }
  if (!violations.empty()) return result;

  ts.types_.resize(n);
  ts.type_index_.resize(n);
  ts.spaces_.assign(n, std::vector<std::vector<TypeId>>(levels));
  for (AgentId i = 0; i < n; ++i) {
    for (const auto& [tname, lname] : candidate.types[i]) {
      const auto level = lattice.find(lname);
      if (!level) {
        violations.push_back({"UnknownLevel", "type '" + tname + "' of agent '" + ts.agents_[i] +
                                                  "' names level '" + lname + "'"});
        continue;
      }
      const TypeId id = ts.types_[i].size();
      if (!ts.type_index_[i].emplace(tname, id).second) {
        violations.push_back({"DuplicateType", "agent '" + ts.agents_[i] + "' declares '" + tname +
                                                   "' more than once (spaces must be disjoint)"});
        continue;
      }
      ts.types_[i].push_back({tname, *level});
      ts.spaces_[i][*level].push_back(id);
    }
    for (Level l = 0; l < levels; ++l) {
      if (ts.spaces_[i][l].empty()) {
        violations.push_back({"EmptySpace", "agent '" + ts.agents_[i] + "' has no type at level '" +
                                                lattice.name(l) + "'"});
      }
    }
  }
  if (!violations.empty()) return result;

  // explicit[agent][type] : level -> projected type
  std::vector<std::vector<std::map<Level, TypeId>>> explicit_edges(n);
  for (AgentId i = 0; i < n; ++i) {
    explicit_edges[i].resize(ts.types_[i].size());
    for (const auto& [from, to] : candidate.projections[i]) {
      const auto f = ts.find_type(i, from);
      const auto t = ts.find_type(i, to);
      if (!f || !t) {
        violations.push_back({"UnknownType", "projection " + from + " -> " + to + " of agent '" +
                                                 ts.agents_[i] + "'"});
        continue;
      }
      const Level lf = ts.level_of(i, *f);
      const Level lt = ts.level_of(i, *t);
      if (!lattice.less(lt, lf)) {
        violations.push_back({"BadProjection", "projection " + from + " -> " + to + " of agent '" +
                                                   ts.agents_[i] + "' does not go to a strictly lower level"});
        continue;
      }
      auto [it, inserted] = explicit_edges[i][*f].emplace(lt, *t);
      if (!inserted && it->second != *t) {
        violations.push_back({"BadProjection", "type '" + from + "' of agent '" + ts.agents_[i] +
                                                   "' is projected twice to level '" + lattice.name(lt) + "'"});
      }
    }
  }
  if (!violations.empty()) return result;

  for (AgentId i = 0; i < n; ++i) {
    for (auto [lo, hi] : lattice.covering_pairs()) {
      std::vector<char> hit(ts.types_[i].size(), 0);
      bool complete = true;
      for (TypeId t : ts.spaces_[i][hi]) {
        const auto it = explicit_edges[i][t].find(lo);
        if (it == explicit_edges[i][t].end()) {
          violations.push_back({"MissingProjection", "agent '" + ts.agents_[i] + "', levels '" +
                                                         lattice.name(hi) + "' -> '" + lattice.name(lo) +
                                                         "', type '" + ts.type_name(i, t) + "'"});
          complete = false;
          continue;
        }
        hit[it->second] = 1;
      }
      if (!complete) continue;
      for (TypeId t : ts.spaces_[i][lo]) {
        if (!hit[t]) {
          violations.push_back({"NotSurjective", "agent '" + ts.agents_[i] + "', levels '" + lattice.name(hi) +
                                                     "' -> '" + lattice.name(lo) + "' misses type '" +
                                                     ts.type_name(i, t) + "'"});
        }
      }
    }
  }
  if (!violations.empty()) return result;

  ts.proj_.resize(n);
  for (AgentId i = 0; i < n; ++i) {
    ts.proj_[i].assign(ts.types_[i].size(), std::vector<TypeId>(levels, TypeStructure::kNone));
    for (TypeId t = 0; t < ts.types_[i].size(); ++t) {
      const Level top = ts.level_of(i, t);
      auto below = lattice.down_set(top);
      std::sort(below.begin(), below.end(), [&](Level a, Level b) {
        return lattice.down_set(a).size() > lattice.down_set(b).size();
      });
      auto& row = ts.proj_[i][t];
      row[top] = t;
      for (Level l : below) {
        if (l == top) continue;
        std::optional<std::pair<Level, TypeId>> first;
        for (auto [lo, hi] : lattice.covering_pairs()) {
          if (lo != l || !lattice.leq(hi, top)) continue;
          const TypeId via = explicit_edges[i][row[hi]].at(l);
          if (!first) {
            first = {hi, via};
          } else if (first->second != via) {
            violations.push_back({"CompositionFailure",
                                  "agent '" + ts.agents_[i] + "', type '" + ts.type_name(i, t) + "' reaches level '" +
                                      lattice.name(l) + "' as '" + ts.type_name(i, first->second) + "' via '" +
                                      lattice.name(first->first) + "' but as '" + ts.type_name(i, via) + "' via '" +
                                      lattice.name(hi) + "'"});
          }
        }
        row[l] = first->second;
      }
      for (auto [l, target] : explicit_edges[i][t]) {
        if (row[l] != target) {
          violations.push_back({"CompositionFailure",
                                "agent '" + ts.agents_[i] + "', type '" + ts.type_name(i, t) + "': explicit edge to '" +
                                    ts.type_name(i, target) + "' disagrees with composite '" +
                                    ts.type_name(i, row[l]) + "' at level '" + lattice.name(l) + "'"});
        }
      }
    }
  }
  if (!violations.empty()) return result;

  result.value = std::move(ts);
  return result;
}

}  // namespace unaware
