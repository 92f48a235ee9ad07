#include "unaware/generator.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace unaware {

std::string to_string(GeneratorVariant v) {
  switch (v) {
    case GeneratorVariant::general: return "general";
    case GeneratorVariant::nonnegative: return "nonnegative";
    case GeneratorVariant::procurement: return "procurement";
    case GeneratorVariant::separable: return "separable";
  }
  return "?";
}

GeneratorVariant parse_generator_variant(std::string_view text) {
  for (auto v : {GeneratorVariant::general, GeneratorVariant::nonnegative, GeneratorVariant::procurement,
                 GeneratorVariant::separable})
    if (to_string(v) == text) return v;
  throw Error("UnknownVariant", "'" + std::string(text) + "'");
}

AwarenessLattice generator_lattice(std::size_t which) {
  switch (which % 3) {
    case 0: return chain_lattice({"lo", "hi"});
    case 1: return chain_lattice({"lo", "mid", "hi"});
    default: return make_lattice({{"lo", "l", "r", "hi"}, {{"lo", "l"}, {"lo", "r"}, {"l", "hi"}, {"r", "hi"}}});
  }
}

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

long value(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Partition of top-level types as block labels 0..k-1 in order of first appearance.
using Partition = std::vector<std::size_t>;

Partition canonical(const Partition& p) {
  std::map<std::size_t, std::size_t> rename;
  Partition out;
  for (auto b : p) out.push_back(rename.emplace(b, rename.size()).first->second);
  return out;
}

// Finest partition coarser than all given ones.
Partition coarsest_common(const std::vector<Partition>& parts, std::size_t n) {
  Partition label(n);
  for (std::size_t k = 0; k < n; ++k) label[k] = k;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : parts)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (p[a] == p[b] && label[a] != label[b]) {
            const auto lo = std::min(label[a], label[b]);
            label[a] = label[b] = lo;
            changed = true;
          }
  }
  return canonical(label);
}

std::size_t blocks(const Partition& p) { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1; }

// Type structure of one agent as nested partitions of its top types, so
// composition and surjectivity hold by construction.
std::vector<Partition> agent_partitions(Rng& rng, const AwarenessLattice& lattice, std::size_t top_types,
                                        std::size_t max_types) {
  std::vector<Level> order(lattice.size());
  for (Level l = 0; l < lattice.size(); ++l) order[l] = l;
  std::sort(order.begin(), order.end(),
            [&](Level a, Level b) { return lattice.down_set(a).size() > lattice.down_set(b).size(); });
  std::vector<Partition> part(lattice.size());
  for (Level l : order) {
    std::vector<Partition> uppers;
    for (const auto& [lo, hi] : lattice.covering_pairs())
      if (lo == l) uppers.push_back(part[hi]);
    Partition p;
    if (uppers.empty()) {
      for (std::size_t k = 0; k < top_types; ++k) p.push_back(k);
    } else {
      p = coarsest_common(uppers, top_types);
      // Randomly merge blocks, sometimes down to one.
      std::size_t want = pick(rng, 1, std::min(blocks(p), max_types));
      while (blocks(p) > want) {
        const std::size_t a = pick(rng, 0, blocks(p) - 1);
        std::size_t b = pick(rng, 0, blocks(p) - 2);
        if (b >= a) ++b;
        for (auto& x : p)
          if (x == b) x = a;
        p = canonical(p);
      }
    }
    part[l] = p;
  }
  return part;
}

std::string type_name(std::size_t agent, const AwarenessLattice& lattice, Level l, std::size_t block) {
  return "t" + std::to_string(agent + 1) + "_" + lattice.name(l) + std::to_string(block);
}

}  // namespace

Scenario generate_scenario(std::uint64_t seed, const GeneratorOptions& options) {
  Rng rng(seed);
  const auto variant = options.variant;
  const AwarenessLattice lattice = generator_lattice(pick(rng, 0, 2));
  const bool procurement = variant == GeneratorVariant::procurement;
  const std::size_t n = procurement ? 3 : pick(rng, 1 + (options.max_agents > 1), std::max<std::size_t>(options.max_agents, 2));
  const std::size_t buyer = n - 1;

  TypeStructureSpec ts;
  std::vector<std::vector<Partition>> parts(n);
  for (AgentId i = 0; i < n; ++i) {
    ts.agents.push_back(procurement ? (i == buyer ? "buyer" : "seller" + std::to_string(i + 1))
                                    : "agent" + std::to_string(i + 1));
    const std::size_t cap = (procurement && i == buyer) ? 1 : options.max_types;
    parts[i] = agent_partitions(rng, lattice, pick(rng, 1, cap), cap);
    ts.types.emplace_back();
    ts.projections.emplace_back();
    for (Level l = 0; l < lattice.size(); ++l)
      for (std::size_t b = 0; b < blocks(parts[i][l]); ++b) ts.types[i].emplace_back(type_name(i, lattice, l, b), lattice.name(l));
    for (const auto& [lo, hi] : lattice.covering_pairs())
      for (std::size_t k = 0; k < parts[i][hi].size(); ++k)
        ts.projections[i].emplace_back(type_name(i, lattice, hi, parts[i][hi][k]),
                                       type_name(i, lattice, lo, parts[i][lo][k]));
  }
  // Projections are listed once per top type; drop duplicates.
  for (auto& p : ts.projections) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  TypeStructure types = validate_structure(lattice, ts).get();

  OutcomeModelSpec om;
  const std::size_t m = procurement ? 2 : pick(rng, 2, std::max<std::size_t>(options.max_outcomes, 2));
  for (std::size_t x = 0; x < m; ++x) om.outcomes.push_back(procurement ? "s" + std::to_string(x + 1) : "x" + std::to_string(x));
  // Availability grows with awareness: each outcome appears from a random level up.
  std::vector<Level> first(m);
  for (std::size_t x = 0; x < m; ++x) first[x] = x == 0 || procurement ? lattice.bottom() : pick(rng, 0, lattice.size() - 1);
  for (Level l = 0; l < lattice.size(); ++l) {
    std::vector<std::string> av;
    for (std::size_t x = 0; x < m; ++x)
      if (lattice.leq(first[x], l)) av.push_back(om.outcomes[x]);
    om.available.emplace_back(lattice.name(l), av);
  }
  for (AgentId i = 0; i < n; ++i) {
    for (TypeId t = 0; t < types.type_count(i); ++t) {
      const long base = value(rng, 0, 3);
      for (std::size_t x = 0; x < m; ++x) {
        long v = 0;
        switch (variant) {
          case GeneratorVariant::general: v = value(rng, -5, 5); break;
          case GeneratorVariant::nonnegative: v = value(rng, 0, 5); break;
          case GeneratorVariant::procurement:
            if (i == buyer) v = 10 + base;
            else v = x == i ? -value(rng, 1, 9) : 0;
            break;
          case GeneratorVariant::separable: v = x == 0 ? 10 + base : value(rng, 0, 3); break;
        }
        om.valuations.emplace_back(types.agent_name(i), types.type_name(i, t), om.outcomes[x], Rational(v));
      }
    }
  }
  OutcomeModel outcomes = validate_outcomes(types, om).get();

  SchemeConfig scheme;
  if (procurement) {
    scheme.kind = SchemeKind::rspa;
    scheme.buyer = buyer;
    scheme.supplies = {Outcome{0}, Outcome{1}, std::nullopt};
  }

  NatureDraw draw;
  draw.name = "random";
  for (AgentId i = 0; i < n; ++i) {
    const auto& top = types.space(i, lattice.top());
    draw.true_types.push_back(top[pick(rng, 0, top.size() - 1)]);
    draw.awareness.push_back(pick(rng, 0, lattice.size() - 1));
  }
  Scenario sc{"gen-" + to_string(variant) + "-" + std::to_string(seed), std::move(types), std::move(outcomes), scheme,
              {draw}};
  return with_scheme(sc, scheme);
}

}  // namespace unaware
