#include <map>

#include "unaware/exact_linear.hpp"
#include "unaware/verifier.hpp"

namespace unaware {

namespace {

Rational level_welfare(const Scenario& sc, const Profile& t, Level level) {
  return sc.outcomes.welfare(sc.outcomes.efficient_outcome(t, level), t);
}

}  // namespace

HolmstromSolution find_g(const Scenario& scenario) {
  const auto& ts = scenario.types;
  const std::size_t n = ts.agent_count();
  HolmstromSolution out;
  GTable g;
  for (Level l = 0; l < scenario.lattice().size(); ++l) {
    const auto profiles = ts.profiles(l);
    std::map<OpponentKey, std::size_t> column;
    for (const auto& t : profiles)
      for (AgentId i = 0; i < n; ++i) column.emplace(OpponentKey{i, l, opponents_of(t, i)}, 0);
    std::size_t next = 0;
    for (auto& [key, c] : column) c = next++;

    Matrix a(profiles.size(), std::vector<Rational>(column.size(), Rational(0)));
    std::vector<Rational> b(profiles.size());
    for (std::size_t r = 0; r < profiles.size(); ++r) {
      for (AgentId i = 0; i < n; ++i) a[r][column.at({i, l, opponents_of(profiles[r], i)})] += 1;
      b[r] = level_welfare(scenario, profiles[r], l);
    }
    LinearSolution sol = solve_exact(a, b);
    if (!sol.x) {
      InfeasibilityCertificate cert;
      cert.level = l;
      cert.residual = 0;
      for (std::size_t r = 0; r < profiles.size(); ++r) {
        const Rational& c = (*sol.certificate)[r];
        if (c == 0) continue;
        cert.combination.emplace_back(profiles[r], c);
        cert.residual += c * b[r];
      }
      out.certificate = std::move(cert);
      return out;
    }
    for (const auto& [key, c] : column) g[key] = (*sol.x)[c];
  }
  out.g = std::move(g);
  return out;
}

bool verify_certificate(const Scenario& scenario, const InfeasibilityCertificate& certificate) {
  const std::size_t n = scenario.agent_count();
  std::map<OpponentKey, Rational> lhs;
  Rational rhs = 0;
  for (const auto& [t, c] : certificate.combination) {
    for (AgentId i = 0; i < n; ++i) lhs[{i, certificate.level, opponents_of(t, i)}] += c;
    rhs += c * level_welfare(scenario, t, certificate.level);
  }
  for (const auto& [key, v] : lhs)
    if (v != 0) return false;
  return rhs != 0 && rhs == certificate.residual;
}

VerificationResult check_holmstrom(const Scenario& scenario, const GTable& g) {
  const auto& ts = scenario.types;
  VerificationResult r;
  r.property = "holmstrom";
  for (Level l = 0; l < scenario.lattice().size(); ++l) {
    ts.for_each_profile(l, [&](const Profile& t) {
      Rational sum = 0;
      for (AgentId i = 0; i < ts.agent_count(); ++i) {
        auto it = g.find({i, l, opponents_of(t, i)});
        if (it == g.end()) {
          throw Error("DimensionMismatch", "g has no entry for agent '" + ts.agent_name(i) + "' at " + ts.describe(t));
        }
        sum += it->second;
      }
      const Rational w = level_welfare(scenario, t, l);
      ++r.checked;
      if (sum != w) {
        Witness wit;
        wit.description = "sum of g is " + to_string(sum) + " but welfare is " + to_string(w) + " at " + ts.describe(t);
        wit.history = {t};
        wit.play_value = sum;
        wit.reference_value = w;
        wit.gap = sum - w;
        r.holds = false;
        if (r.witnesses.size() < 5) r.witnesses.push_back(std::move(wit));
      }
    });
  }
  return r;
}

LevelTable derive_y_from_g(const Scenario& scenario, const GTable& g) {
  const Rational k = static_cast<long>(scenario.agent_count()) - 1;
  LevelTable y;
  for (const auto& [key, v] : g) y[key] = -k * v;
  return y;
}

}  // namespace unaware
