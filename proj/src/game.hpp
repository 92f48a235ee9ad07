#pragma once

// Internal: the induced game as an explicit state graph, shared by the checks.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "unaware/transfers.hpp"

namespace unaware::detail {

/// Every cartesian product element; nothing if some set is empty.
void for_each_product(const std::vector<std::vector<TypeId>>& sets, const std::function<void(const Profile&)>& visit);

/// Effective initial awareness per agent plus the true profile projected to
/// their join. Ranging over all roots covers every draw of every partial game.
struct Root {
  std::vector<Level> aware;
  Level joined = 0;
  Profile types;
};

void for_each_root(const TypeStructure& types, const std::function<void(const Root&)>& visit);

/// Top-level types projecting onto each type: lift[i][t].
std::vector<std::vector<TypeId>> lift_table(const TypeStructure& types);

/// A draw of the top-partial game that starts at the root.
NatureDraw root_draw(const Root& root, const std::vector<std::vector<TypeId>>& lift);

/// Recipient bookkeeping: agent id, or one of these.
struct Recipient {
  static constexpr std::size_t undecided = static_cast<std::size_t>(-1);
  static constexpr std::size_t none = static_cast<std::size_t>(-2);
};

/// Game position before a stage: last reported profile (empty before stage 1)
/// and what is known about the first pooled reporter.
struct Node {
  Profile last;
  std::size_t recipient = Recipient::undecided;

  bool initial() const noexcept { return last.empty(); }
  friend auto operator<=>(const Node&, const Node&) = default;
};

/// Settlement cache keyed by (final profile, recipient).
class SettlementCache {
 public:
  explicit SettlementCache(const Mechanism& mechanism) : mechanism_(&mechanism) {}
  const TransferReport& get(const Profile& last, std::size_t recipient);

 private:
  const Mechanism* mechanism_;
  std::map<std::pair<Profile, std::size_t>, TransferReport> cache_;
};

class Game {
 public:
  Game(const Mechanism& mechanism, Root root, SettlementCache& cache, std::size_t& explored, std::size_t bound,
       bool opponents_truthful = false);

  const Root& root() const noexcept { return root_; }
  Level aware(AgentId j, const Node& s) const;
  std::vector<TypeId> feasible(AgentId j, const Node& s) const;
  TypeId truth(AgentId j, const Node& s) const;
  /// True when reporting q at s ends the play.
  bool ends(const Node& s, const Profile& q) const;
  Node child(const Node& s, const Profile& q) const;
  /// Final profile and recipient when q ends the play at s.
  std::pair<Profile, std::size_t> terminal(const Node& s, const Profile& q) const;

  /// Every feasible report profile at s.
  void for_each_move(const Node& s, const std::function<void(const Profile&)>& visit) const;
  /// Profiles agent i has to reckon with at s: her own report free or truthful,
  /// opponents free unless the game models them as truthful.
  void for_each_move(AgentId i, const Node& s, bool i_free, const std::function<void(const Profile&)>& visit) const;

  /// Agent i's utility at evaluation type `eval`: sup over all continuations
  /// (maximize) or inf over continuations where i is truthful.
  Rational value(AgentId i, TypeId eval, const Node& s, bool maximize);
  Rational move_value(AgentId i, TypeId eval, const Node& s, const Profile& q, bool maximize);
  /// Profiles attaining value(), up to and including the stopping profile.
  std::vector<Profile> continuation(AgentId i, TypeId eval, const Node& s, bool maximize);

  Rational leaf_utility(AgentId i, TypeId eval, const Profile& last, std::size_t recipient);
  const TransferReport& settle(const Profile& last, std::size_t recipient) { return cache_->get(last, recipient); }

 private:
  std::size_t classify(const Profile& q) const;
  void count();

  const Mechanism* mechanism_;
  const TypeStructure* types_;
  Root root_;
  SettlementCache* cache_;
  std::size_t* explored_;
  std::size_t bound_;
  bool one_shot_;
  bool opponents_truthful_;
  std::map<std::tuple<AgentId, TypeId, bool, Node>, Rational> memo_;
};

}  // namespace unaware::detail
