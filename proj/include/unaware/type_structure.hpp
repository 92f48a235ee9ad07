#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unaware/errors.hpp"
#include "unaware/lattice.hpp"

namespace unaware {

using AgentId = std::size_t;
/// Index of a payoff type within one agent's type set (all levels).
using TypeId = std::size_t;
/// One type per agent, indexed by AgentId.
using Profile = std::vector<TypeId>;

struct ProfileHash {
  std::size_t operator()(const Profile& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (TypeId t : p) h = (h ^ (t + 0x9e3779b97f4a7c15ull)) * 0x100000001b3ull;
    return h;
  }
};

/// Unvalidated type structure as read from a scenario file.
struct TypeStructureSpec {
  std::vector<std::string> agents;
  /// Per agent: (type name, level name).
  std::vector<std::vector<std::pair<std::string, std::string>>> types;
  /// Per agent: (from type, to type). Covering edges are required; longer
  /// edges are optional and cross-checked against the composite.
  std::vector<std::vector<std::pair<std::string, std::string>>> projections;
};

/// What nature draws: a top-level type and an awareness level per agent.
struct NatureDraw {
  std::string name;
  Profile true_types;
  std::vector<Level> awareness;

  friend bool operator==(const NatureDraw&, const NatureDraw&) = default;
};

/// Per-agent level-indexed type spaces with their projection system.
class TypeStructure {
 public:
  const AwarenessLattice& lattice() const noexcept { return lattice_; }

  std::size_t agent_count() const noexcept { return agents_.size(); }
  const std::string& agent_name(AgentId i) const { return agents_.at(i); }
  const std::vector<std::string>& agent_names() const noexcept { return agents_; }
  std::optional<AgentId> find_agent(std::string_view name) const;
  AgentId agent(std::string_view name) const;

  std::size_t type_count(AgentId i) const { return types_.at(i).size(); }
  const std::string& type_name(AgentId i, TypeId t) const { return types_.at(i).at(t).name; }
  std::optional<TypeId> find_type(AgentId i, std::string_view name) const;
  /// Throws Error("UnknownType").
  TypeId type(AgentId i, std::string_view name) const;

  /// The unique level whose space contains t.
  Level level_of(AgentId i, TypeId t) const { return types_.at(i).at(t).level; }
  const std::vector<TypeId>& space(AgentId i, Level level) const { return spaces_.at(i).at(level); }

  /// r^{level_of(t)}_{target}(t). Throws Error("LevelNotBelow") unless target is below level_of(t).
  TypeId project(AgentId i, TypeId t, Level target) const;
  /// True when u is an elaboration of t: level_of(t) below level_of(u) and u projects onto t.
  bool elaborates(AgentId i, TypeId u, TypeId t) const;
  /// All types at weakly higher levels projecting onto t, including t.
  std::vector<TypeId> upset(AgentId i, TypeId t) const;

  /// Join of the per-agent levels of a profile.
  Level pooled_level(const Profile& profile) const;
  /// Componentwise projection of a profile whose entries all lie weakly above target.
  Profile project_profile(const Profile& profile, Level target) const;

  /// Type perceived by agent i in the `partial`-partial game, with the
  /// awareness level it is perceived at (awareness meet partial).
  std::pair<TypeId, Level> perceived_type(AgentId i, const NatureDraw& draw, Level partial) const;

  /// Calls `visit` for every profile in the product of the level's spaces.
  void for_each_profile(Level level, const std::function<void(const Profile&)>& visit) const;
  std::vector<Profile> profiles(Level level) const;
  std::size_t profile_count(Level level) const;

  /// Types of agent i whose level is weakly below `level`.
  std::vector<TypeId> types_below(AgentId i, Level level) const;

  std::string describe(const Profile& profile) const;

  /// Throws ValidationError unless the draw is well formed for this structure.
  void check_draw(const NatureDraw& draw) const;

  friend bool operator==(const TypeStructure& a, const TypeStructure& b) {
    return a.lattice_ == b.lattice_ && a.agents_ == b.agents_ && a.types_ == b.types_ &&
           a.proj_ == b.proj_;
  }

 private:
  friend Validated<TypeStructure> validate_structure(const AwarenessLattice&, const TypeStructureSpec&);

  struct TypeInfo {
    std::string name;
    Level level = 0;
    friend bool operator==(const TypeInfo&, const TypeInfo&) = default;
  };
  static constexpr TypeId kNone = static_cast<TypeId>(-1);

  AwarenessLattice lattice_;
  std::vector<std::string> agents_;
  std::unordered_map<std::string, AgentId> agent_index_;
  std::vector<std::vector<TypeInfo>> types_;
  std::vector<std::unordered_map<std::string, TypeId>> type_index_;
  std::vector<std::vector<std::vector<TypeId>>> spaces_;  // [agent][level] -> types
  std::vector<std::vector<std::vector<TypeId>>> proj_;    // [agent][type][level] -> type or kNone
};

/// Checks disjointness, nonempty spaces, presence and surjectivity of
/// covering projections, and the composition law. Violation codes:
/// UnknownAgent, UnknownLevel, UnknownType, DuplicateType, EmptySpace,
/// MissingProjection, BadProjection, NotSurjective, CompositionFailure.
Validated<TypeStructure> validate_structure(const AwarenessLattice& lattice, const TypeStructureSpec& candidate);

}  // namespace unaware
