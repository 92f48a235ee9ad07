#pragma once

#include <cstdint>
#include <string>

#include "unaware/scenario.hpp"

namespace unaware {

enum class GeneratorVariant {
  general,      ///< valuations in [-5, 5]
  nonnegative,  ///< valuations in [0, 5]
  procurement,  ///< two sellers with costs and a buyer; rspa scheme
  separable,    ///< one outcome always wins and welfare is additively separable
};

std::string to_string(GeneratorVariant v);
GeneratorVariant parse_generator_variant(std::string_view text);

/// Caps match what the exhaustive checks can handle: chains of 2-3 levels
/// or the 2x2 diamond, at most 3 agents, 3 types per agent per level, 4 outcomes.
struct GeneratorOptions {
  GeneratorVariant variant = GeneratorVariant::general;
  std::size_t max_agents = 3;
  std::size_t max_types = 3;
  std::size_t max_outcomes = 4;
};

/// Deterministic in (seed, options). Includes one random draw named "random".
Scenario generate_scenario(std::uint64_t seed, const GeneratorOptions& options = {});

/// Chain of 2 or 3 levels, or the diamond, picked by `which` modulo 3.
AwarenessLattice generator_lattice(std::size_t which);

}  // namespace unaware
