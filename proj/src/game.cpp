#include "game.hpp"

#include <string>

namespace unaware::detail {

void for_each_product(const std::vector<std::vector<TypeId>>& sets, const std::function<void(const Profile&)>& visit) {
  for (const auto& s : sets)
    if (s.empty()) return;
  std::vector<std::size_t> pos(sets.size(), 0);
  Profile p(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) p[k] = sets[k][0];
  while (true) {
    visit(p);
    std::size_t k = 0;
    for (; k < sets.size(); ++k) {
      if (++pos[k] < sets[k].size()) {
        p[k] = sets[k][pos[k]];
        break;
      }
      pos[k] = 0;
      p[k] = sets[k][0];
    }
    if (k == sets.size()) return;
  }
}

void for_each_root(const TypeStructure& types, const std::function<void(const Root&)>& visit) {
  const auto& lattice = types.lattice();
  const std::size_t n = types.agent_count();
  std::vector<std::vector<TypeId>> levels(n);
  for (auto& l : levels)
    for (Level k = 0; k < lattice.size(); ++k) l.push_back(k);
  for_each_product(levels, [&](const Profile& aware) {
    Root root;
    root.aware.assign(aware.begin(), aware.end());
    root.joined = lattice.bottom();
    for (Level l : root.aware) root.joined = lattice.join(root.joined, l);
    types.for_each_profile(root.joined, [&](const Profile& t) {
      root.types = t;
      visit(root);
    });
  });
}

std::vector<std::vector<TypeId>> lift_table(const TypeStructure& types) {
  const Level top = types.lattice().top();
  std::vector<std::vector<TypeId>> lift(types.agent_count());
  for (AgentId i = 0; i < types.agent_count(); ++i) {
    lift[i].assign(types.type_count(i), 0);
    std::vector<bool> seen(types.type_count(i), false);
    for (TypeId u : types.space(i, top)) {
      for (TypeId t = 0; t < types.type_count(i); ++t) {
        if (!seen[t] && types.project(i, u, types.level_of(i, t)) == t) {
          lift[i][t] = u;
          seen[t] = true;
        }
      }
    }
  }
  return lift;
}

NatureDraw root_draw(const Root& root, const std::vector<std::vector<TypeId>>& lift) {
  NatureDraw d;
  d.name = "root";
  for (AgentId i = 0; i < root.types.size(); ++i) d.true_types.push_back(lift[i][root.types[i]]);
  d.awareness = root.aware;
  return d;
}

const TransferReport& SettlementCache::get(const Profile& last, std::size_t recipient) {
  auto key = std::make_pair(last, recipient);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    std::optional<AgentId> r;
    if (recipient != Recipient::undecided && recipient != Recipient::none) r = recipient;
    it = cache_.emplace(std::move(key), mechanism_->settle(last, r)).first;
  }
  return it->second;
}

Game::Game(const Mechanism& mechanism, Root root, SettlementCache& cache, std::size_t& explored, std::size_t bound,
           bool opponents_truthful)
    : mechanism_(&mechanism),
      types_(&mechanism.scenario().types),
      root_(std::move(root)),
      cache_(&cache),
      explored_(&explored),
      bound_(bound),
      one_shot_(mechanism.scheme().kind == SchemeKind::static_vickrey),
      opponents_truthful_(opponents_truthful) {}

Level Game::aware(AgentId j, const Node& s) const {
  if (s.initial()) return root_.aware[j];
  return types_->lattice().join(root_.aware[j], types_->pooled_level(s.last));
}

std::vector<TypeId> Game::feasible(AgentId j, const Node& s) const {
  if (s.initial()) return types_->types_below(j, root_.aware[j]);
  return feasible_set(*types_, j, s.last[j], types_->pooled_level(s.last), aware(j, s));
}

TypeId Game::truth(AgentId j, const Node& s) const { return types_->project(j, root_.types[j], aware(j, s)); }

bool Game::ends(const Node& s, const Profile& q) const { return one_shot_ ? s.initial() : q == s.last; }

std::size_t Game::classify(const Profile& q) const {
  const Level pooled = types_->pooled_level(q);
  std::size_t found = Recipient::undecided;
  for (AgentId j = 0; j < q.size(); ++j) {
    if (types_->level_of(j, q[j]) != pooled) continue;
    if (found != Recipient::undecided) return Recipient::none;
    found = j;
  }
  return found;
}

Node Game::child(const Node& s, const Profile& q) const {
  Node c;
  c.last = q;
  const bool same_level = !s.initial() && types_->pooled_level(s.last) == types_->pooled_level(q);
  c.recipient = (same_level && s.recipient != Recipient::undecided) ? s.recipient : classify(q);
  return c;
}

std::pair<Profile, std::size_t> Game::terminal(const Node& s, const Profile& q) const {
  if (one_shot_) return {q, Recipient::none};
  return {q, s.recipient};
}

void Game::for_each_move(const Node& s, const std::function<void(const Profile&)>& visit) const {
  std::vector<std::vector<TypeId>> sets(root_.aware.size());
  for (AgentId j = 0; j < sets.size(); ++j) sets[j] = feasible(j, s);
  for_each_product(sets, visit);
}

void Game::for_each_move(AgentId i, const Node& s, bool i_free, const std::function<void(const Profile&)>& visit) const {
  std::vector<std::vector<TypeId>> sets(root_.aware.size());
  for (AgentId j = 0; j < sets.size(); ++j) {
    const bool free = j == i ? i_free : !opponents_truthful_;
    sets[j] = free ? feasible(j, s) : std::vector<TypeId>{truth(j, s)};
  }
  for_each_product(sets, visit);
}

void Game::count() {
  if (++*explored_ > bound_) {
    throw StrategySpaceTooLarge("more than " + std::to_string(bound_) + " game states");
  }
}

Rational Game::leaf_utility(AgentId i, TypeId eval, const Profile& last, std::size_t recipient) {
  return mechanism_->utility(i, eval, settle(last, recipient));
}

Rational Game::move_value(AgentId i, TypeId eval, const Node& s, const Profile& q, bool maximize) {
  if (ends(s, q)) {
    auto [last, rec] = terminal(s, q);
    return leaf_utility(i, eval, last, rec);
  }
  return value(i, eval, child(s, q), maximize);
}

Rational Game::value(AgentId i, TypeId eval, const Node& s, bool maximize) {
  auto key = std::make_tuple(i, eval, maximize, s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  count();
  std::optional<Rational> best;
  for_each_move(i, s, maximize, [&](const Profile& q) {
    Rational v = move_value(i, eval, s, q, maximize);
    if (!best || (maximize ? v > *best : v < *best)) best = std::move(v);
  });
  if (!best) throw Error("EmptyFeasibleSet", "no feasible report profile");
  return memo_.emplace(std::move(key), *best).first->second;
}

std::vector<Profile> Game::continuation(AgentId i, TypeId eval, const Node& start, bool maximize) {
  std::vector<Profile> out;
  Node s = start;
  while (true) {
    const Rational target = value(i, eval, s, maximize);
    std::optional<Profile> chosen;
    for_each_move(i, s, maximize, [&](const Profile& q) {
      if (!chosen && move_value(i, eval, s, q, maximize) == target) chosen = q;
    });
    out.push_back(*chosen);
    if (ends(s, *chosen)) return out;
    s = child(s, *chosen);
  }
}

}  // namespace unaware::detail
