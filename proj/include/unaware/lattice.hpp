#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unaware/errors.hpp"

namespace unaware {

/// Index of an awareness level inside its lattice.
using Level = std::size_t;

/// Unvalidated lattice description: level names plus a generating order
/// relation, each pair (a, b) meaning a is below b.
struct LatticeSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> order;
};

/// Finite lattice of awareness levels. Immutable once built; all queries are
/// table lookups.
class AwarenessLattice {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Level level) const { return names_.at(level); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Level> find(std::string_view name) const;
  /// Throws Error("UnknownLevel") for undeclared names.
  Level level(std::string_view name) const;

  bool leq(Level a, Level b) const { return leq_[a * size() + b] != 0; }
  bool less(Level a, Level b) const { return a != b && leq(a, b); }
  bool comparable(Level a, Level b) const { return leq(a, b) || leq(b, a); }

  Level join(Level a, Level b) const { return join_[a * size() + b]; }
  Level meet(Level a, Level b) const { return meet_[a * size() + b]; }

  Level top() const noexcept { return top_; }
  Level bottom() const noexcept { return bottom_; }

  /// Levels weakly below `level`, including itself, in index order.
  std::vector<Level> down_set(Level level) const;
  std::vector<Level> strictly_below(Level level) const;
  std::vector<Level> up_set(Level level) const;

  /// Hasse diagram: pairs (lower, upper) where upper covers lower.
  const std::vector<std::pair<Level, Level>>& covering_pairs() const noexcept { return covers_; }
  bool covers(Level upper, Level lower) const;

  /// Length of the longest strictly increasing chain.
  std::size_t height() const noexcept { return height_; }

  /// Restriction to down_set(level); names are kept.
  AwarenessLattice sublattice(Level level) const;

  friend bool operator==(const AwarenessLattice& a, const AwarenessLattice& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  friend Validated<AwarenessLattice> validate_lattice(const LatticeSpec& candidate);

  std::vector<std::string> names_;
  std::unordered_map<std::string, Level> index_;
  std::vector<char> leq_;
  std::vector<Level> join_;
  std::vector<Level> meet_;
  std::vector<std::pair<Level, Level>> covers_;
  Level top_ = 0;
  Level bottom_ = 0;
  std::size_t height_ = 0;
};

/// Computes the reflexive-transitive closure of the generating order and
/// checks antisymmetry plus existence of unique joins and meets.
/// Violation codes: EmptyLattice, UnknownLevel, DuplicateLevel,
/// NotAntisymmetric, NotALattice.
Validated<AwarenessLattice> validate_lattice(const LatticeSpec& candidate);

/// Throwing convenience wrapper around validate_lattice.
AwarenessLattice make_lattice(const LatticeSpec& candidate);

/// The lattice of all subsets of `items`, ordered by inclusion. Levels are
/// named by their sorted item letters ("" becomes "0", e.g. "ab", "abc").
AwarenessLattice powerset_lattice(std::string_view items);

/// Chain lattice with levels named in increasing order.
AwarenessLattice chain_lattice(const std::vector<std::string>& names);

}  // namespace unaware
