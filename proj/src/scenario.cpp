#include "unaware/scenario.hpp"

namespace unaware {

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::groves: return "groves";
    case SchemeKind::clarke: return "clarke";
    case SchemeKind::rspa: return "rspa";
    case SchemeKind::static_vickrey: return "static-vickrey";
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view text) {
  if (text == "groves") return SchemeKind::groves;
  if (text == "clarke") return SchemeKind::clarke;
  if (text == "rspa") return SchemeKind::rspa;
  if (text == "static-vickrey" || text == "static_vickrey") return SchemeKind::static_vickrey;
  throw Error("UnknownScheme", "'" + std::string(text) + "'");
}

Profile opponents_of(const Profile& profile, AgentId i) {
  Profile out;
  out.reserve(profile.size() ? profile.size() - 1 : 0);
  for (AgentId j = 0; j < profile.size(); ++j)
    if (j != i) out.push_back(profile[j]);
  return out;
}

const NatureDraw& Scenario::draw(std::string_view wanted) const {
  for (const auto& d : draws)
    if (d.name == wanted) return d;
  throw Error("UnknownDraw", "'" + std::string(wanted) + "'");
}

std::vector<Violation> validate_scheme(const Scenario& scenario, const SchemeConfig& scheme) {
  std::vector<Violation> v;
  const auto& types = scenario.types;
  const auto& lattice = scenario.lattice();
  const std::size_t n = types.agent_count();

  if (scheme.kind == SchemeKind::groves && !scheme.y_default) {
    for (AgentId i = 0; i < n; ++i) {
      for (Level l = 0; l < lattice.size(); ++l) {
        bool missing = false;
        types.for_each_profile(l, [&](const Profile& p) {
          if (!missing && !scheme.y.count({i, l, opponents_of(p, i)})) missing = true;
        });
        if (missing) {
          v.push_back({"MissingYEntry", "agent '" + types.agent_name(i) + "', level '" + lattice.name(l) + "'"});
        }
      }
    }
  }

  if (scheme.kind == SchemeKind::rspa) {
    if (!scheme.buyer || *scheme.buyer >= n) {
      v.push_back({"MissingBuyer", "rspa needs a buyer agent"});
      return v;
    }
    const AgentId b = *scheme.buyer;
    if (n < 3) v.push_back({"FewerThanTwoSellers", "rspa needs at least two sellers besides the buyer"});
    if (scheme.supplies.size() != n) {
      v.push_back({"NotProcurementContext", "every seller needs a supply outcome"});
      return v;
    }
    const auto& om = scenario.outcomes;
    for (AgentId i = 0; i < n; ++i) {
      if (i == b) continue;
      if (!scheme.supplies[i]) {
        v.push_back({"NotProcurementContext", "seller '" + types.agent_name(i) + "' has no supply outcome"});
        continue;
      }
      const Outcome own = *scheme.supplies[i];
      for (Level l = 0; l < lattice.size(); ++l) {
        if (!om.is_available(own, l)) {
          v.push_back({"NotProcurementContext", "supply outcome of seller '" + types.agent_name(i) +
                                                    "' unavailable at '" + lattice.name(l) + "'"});
        }
      }
      for (TypeId t = 0; t < types.type_count(i); ++t) {
        for (Outcome x = 0; x < om.size(); ++x) {
          const auto& entry = om.value_entry(i, t, x);
          if (x != own && entry && *entry != 0) {
            v.push_back({"NotProcurementContext", "seller '" + types.agent_name(i) + "' values outcome '" +
                                                      om.name(x) + "' it does not supply"});
          }
        }
      }
    }
  }
  return v;
}

Scenario with_scheme(const Scenario& scenario, SchemeConfig scheme) {
  auto violations = validate_scheme(scenario, scheme);
  if (!violations.empty()) throw ValidationError(violations);
  Scenario copy = scenario;
  copy.scheme = std::move(scheme);
  return copy;
}

}  // namespace unaware
