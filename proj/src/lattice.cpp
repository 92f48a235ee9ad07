#include "unaware/lattice.hpp"

#include <algorithm>

namespace unaware {

std::optional<Level> AwarenessLattice::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Level AwarenessLattice::level(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw Error("UnknownLevel", "'" + std::string(name) + "'");
}

std::vector<Level> AwarenessLattice::down_set(Level level) const {
  std::vector<Level> out;
  for (Level l = 0; l < size(); ++l) {
    if (leq(l, level)) out.push_back(l);
  }
  return out;
}

std::vector<Level> AwarenessLattice::strictly_below(Level level) const {
  std::vector<Level> out;
  for (Level l = 0; l < size(); ++l) {
    if (less(l, level)) out.push_back(l);
  }
  return out;
}

std::vector<Level> AwarenessLattice::up_set(Level level) const {
  std::vector<Level> out;
  for (Level l = 0; l < size(); ++l) {
    if (leq(level, l)) out.push_back(l);
  }
  return out;
}

bool AwarenessLattice::covers(Level upper, Level lower) const {
  return std::find(covers_.begin(), covers_.end(), std::make_pair(lower, upper)) != covers_.end();
}

AwarenessLattice AwarenessLattice::sublattice(Level level) const {
  LatticeSpec spec;
  for (Level l : down_set(level)) spec.elements.push_back(names_[l]);
  for (auto [lo, hi] : covers_) {
    if (leq(hi, level)) spec.order.emplace_back(names_[lo], names_[hi]);
  }
  return make_lattice(spec);
}

Validated<AwarenessLattice> validate_lattice(const LatticeSpec& candidate) {
  Validated<AwarenessLattice> result;
  auto& violations = result.violations;
  if (candidate.elements.empty()) {
    violations.push_back({"EmptyLattice", "no awareness levels declared"});
    return result;
  }

  AwarenessLattice lat;
  lat.names_ = candidate.elements;
  for (Level i = 0; i < lat.names_.size(); ++i) {
    if (!lat.index_.emplace(lat.names_[i], i).second) {
      violations.push_back({"DuplicateLevel", "'" + lat.names_[i] + "'"});
    }
  }
  if (!violations.empty()) return result;

  const std::size_t n = lat.size();
  lat.leq_.assign(n * n, 0);
  for (Level i = 0; i < n; ++i) lat.leq_[i * n + i] = 1;
  for (const auto& [lo, hi] : candidate.order) {
    const auto a = lat.find(lo);
    const auto b = lat.find(hi);
    if (!a) violations.push_back({"UnknownLevel", "order pair references '" + lo + "'"});
    if (!b) violations.push_back({"UnknownLevel", "order pair references '" + hi + "'"});
    if (a && b) lat.leq_[*a * n + *b] = 1;
  }
  if (!violations.empty()) return result;

  // Warshall closure.
  for (Level k = 0; k < n; ++k)
    for (Level i = 0; i < n; ++i)
      if (lat.leq_[i * n + k])
        for (Level j = 0; j < n; ++j)
          if (lat.leq_[k * n + j]) lat.leq_[i * n + j] = 1;

  for (Level i = 0; i < n; ++i)
    for (Level j = i + 1; j < n; ++j)
      if (lat.leq(i, j) && lat.leq(j, i)) {
        violations.push_back({"NotAntisymmetric", "'" + lat.names_[i] + "' and '" + lat.names_[j] +
                                                      "' are below each other"});
      }
  if (!violations.empty()) return result;

  lat.join_.assign(n * n, 0);
  lat.meet_.assign(n * n, 0);
  for (Level a = 0; a < n; ++a) {
    for (Level b = a; b < n; ++b) {
      std::optional<Level> join;
      std::optional<Level> meet;
      bool join_ok = false;
      bool meet_ok = false;
      for (Level c = 0; c < n; ++c) {
        if (lat.leq(a, c) && lat.leq(b, c)) {
          // least upper bound: below every other upper bound
          bool least = true;
          for (Level d = 0; d < n && least; ++d)
            if (lat.leq(a, d) && lat.leq(b, d) && !lat.leq(c, d)) least = false;
          if (least) {
            join_ok = !join.has_value();
            join = c;
          }
        }
        if (lat.leq(c, a) && lat.leq(c, b)) {
          bool greatest = true;
          for (Level d = 0; d < n && greatest; ++d)
            if (lat.leq(d, a) && lat.leq(d, b) && !lat.leq(d, c)) greatest = false;
          if (greatest) {
            meet_ok = !meet.has_value();
            meet = c;
          }
        }
      }
      const std::string pair = "'" + lat.names_[a] + "' and '" + lat.names_[b] + "'";
      if (!join || !join_ok) {
        violations.push_back({"NotALattice", pair + " have no unique join"});
      } else {
        lat.join_[a * n + b] = lat.join_[b * n + a] = *join;
      }
      if (!meet || !meet_ok) {
        violations.push_back({"NotALattice", pair + " have no unique meet"});
      } else {
        lat.meet_[a * n + b] = lat.meet_[b * n + a] = *meet;
      }
    }
  }
  if (!violations.empty()) return result;

  Level top = 0;
  Level bottom = 0;
  for (Level l = 1; l < n; ++l) {
    top = lat.join(top, l);
    bottom = lat.meet(bottom, l);
  }
  lat.top_ = top;
  lat.bottom_ = bottom;

  for (Level lo = 0; lo < n; ++lo) {
    for (Level hi = 0; hi < n; ++hi) {
      if (!lat.less(lo, hi)) continue;
      bool covering = true;
      for (Level mid = 0; mid < n && covering; ++mid)
        if (lat.less(lo, mid) && lat.less(mid, hi)) covering = false;
      if (covering) lat.covers_.emplace_back(lo, hi);
    }
  }

  // Longest chain by dynamic programming over a topological order (sizes of down-sets).
  std::vector<Level> order(n);
  for (Level i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Level a, Level b) {
    return lat.down_set(a).size() < lat.down_set(b).size();
  });
  std::vector<std::size_t> depth(n, 0);
  for (Level l : order)
    for (Level k = 0; k < n; ++k)
      if (lat.less(k, l)) depth[l] = std::max(depth[l], depth[k] + 1);
  lat.height_ = *std::max_element(depth.begin(), depth.end());

  result.value = std::move(lat);
  return result;
}

AwarenessLattice make_lattice(const LatticeSpec& candidate) { return validate_lattice(candidate).get(); }

AwarenessLattice powerset_lattice(std::string_view items) {
  LatticeSpec spec;
  const std::size_t k = items.size();
  auto name_of = [&](unsigned mask) {
    std::string s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) s += items[i];
    return s.empty() ? std::string("0") : s;
  };
  for (unsigned mask = 0; mask < (1u << k); ++mask) spec.elements.push_back(name_of(mask));
  for (unsigned mask = 0; mask < (1u << k); ++mask)
    for (std::size_t i = 0; i < k; ++i)
      if (!(mask & (1u << i))) spec.order.emplace_back(name_of(mask), name_of(mask | (1u << i)));
  return make_lattice(spec);
}

AwarenessLattice chain_lattice(const std::vector<std::string>& names) {
  LatticeSpec spec;
  spec.elements = names;
  for (std::size_t i = 0; i + 1 < names.size(); ++i) spec.order.emplace_back(names[i], names[i + 1]);
  return make_lattice(spec);
}

}  // namespace unaware
