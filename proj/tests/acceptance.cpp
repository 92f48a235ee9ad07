// Acceptance criteria 1-10. One PASS/FAIL line per criterion, details indented.
// Usage: acceptance [--criterion N]
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "structural_suite.hpp"
#include "unaware/elaboration.hpp"
#include "unaware/fixtures.hpp"
#include "unaware/generator.hpp"
#include "unaware/transfers.hpp"
#include "unaware/verifier.hpp"

using namespace unaware;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Criterion {
 public:
  void expect(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    lines_.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
  void note(const std::string& what) { lines_.push_back("note  " + what); }
  bool ok() const { return ok_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  bool ok_ = true;
  std::vector<std::string> lines_;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string show(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + to_string(v[k]);
  return out + ")";
}

Scenario with_kind(const Scenario& sc, SchemeKind kind) {
  SchemeConfig s = sc.scheme;
  s.kind = kind;
  if (kind == SchemeKind::groves) {
    s.y.clear();
    s.y_default = Rational(0);
  }
  return with_scheme(sc, s);
}

std::vector<Scenario> generated(GeneratorVariant v, std::size_t count) {
  std::vector<Scenario> out;
  for (std::uint64_t seed = 1; seed <= count; ++seed) out.push_back(generate_scenario(seed, {v}));
  return out;
}

std::string recipient(const Scenario& sc, const std::optional<AgentId>& r) {
  return r ? sc.types.agent_name(*r) : "none";
}

void criterion1(Criterion& c) {
  const auto start = Clock::now();
  const Scenario sc = load_fixture("example1");
  const Mechanism mech(sc);
  const ElaborationEngine engine(sc.types);
  const Transcript t = engine.run_truthful(sc.draw("base"), sc.lattice().top());
  const TransferReport r = mech.transfers(t);
  c.expect(t.stopped && t.stage_count() == 3, "stops at stage " + str(t.stage_count()) + " (expected 3)");
  c.expect(sc.outcomes.name(r.outcome) == "1", "outcome '" + sc.outcomes.name(r.outcome) + "' (expected '1', seller 1 produces)");
  c.expect(r.transfers == std::vector<Rational>{0, 0, -80}, "transfers " + show(r.transfers) + " (expected (0, 0, -80))");
  c.expect(r.operator_balance == 80, "operator surplus " + to_string(r.operator_balance) + " (expected 80)");
  c.expect(!r.premium_recipient, "i* = " + recipient(sc, r.premium_recipient) + " (expected none)");
  const double s = seconds_since(start);
  c.expect(s < 1.0, "runtime " + str(s) + " s (< 1 s)");
  c.note("seller 2's pivot outcome without her is '2' (opponents' welfare 100 vs 20), giving -80 for seller 2");
}

void criterion2(Criterion& c) {
  const auto start = Clock::now();
  const Scenario sc = load_fixture("example2");
  const ElaborationEngine engine(sc.types);
  const NatureDraw& d = sc.draw("base");
  {
    const Scenario st = with_kind(sc, SchemeKind::static_vickrey);
    const Mechanism mech(st);
    const TransferReport r = mech.transfers(engine.run_static(d, sc.lattice().top()));
    c.expect(sc.outcomes.name(r.outcome) == "1", "static: winner bidder " + sc.outcomes.name(r.outcome) + " (expected 1)");
    c.expect(r.transfers[0] == -1, "static: price " + to_string(-r.transfers[0]) + " (expected 1)");
    const auto pooled = check_pooled_implementation(mech);
    c.expect(!pooled.holds, std::string("static: pooled implementation ") + (pooled.holds ? "holds" : "fails") +
                                " (expected to fail)");
  }
  const Mechanism mech(sc);
  const TransferReport r = mech.transfers(engine.run_truthful(d, sc.lattice().top()));
  c.expect(sc.outcomes.name(r.outcome) == "2", "clarke: winner bidder " + sc.outcomes.name(r.outcome) + " (expected 2)");
  const Rational m1 = mech.awareness_premium(0, sc.lattice().top());
  c.expect(m1 == 1, "clarke: m_1(top) = " + to_string(m1) + " (expected 1)");
  c.expect(r.transfers[0] == 1, "clarke: bidder 1 nets " + to_string(r.transfers[0]) + " (expected +1)");
  c.expect(r.transfers[1] == -2, "clarke: bidder 2 nets " + to_string(r.transfers[1]) + " (expected -2)");
  c.expect(r.operator_balance == 1, "clarke: surplus " + to_string(r.operator_balance) + " (expected 1)");
  const double s = seconds_since(start);
  c.expect(s < 1.0, "runtime " + str(s) + " s (< 1 s)");
  c.note("the a-terms are budget neutral: bidder 2 pays the Clarke price 2 plus m_1 = 1");
}

void criterion3(Criterion& c) {
  std::vector<Scenario> cases{load_fixture("example1"), load_fixture("example2")};
  for (auto& sc : generated(GeneratorVariant::general, 20)) cases.push_back(std::move(sc));
  VerifierOptions truthful;
  truthful.opponents = OpponentModel::truthful;
  for (SchemeKind kind : {SchemeKind::clarke, SchemeKind::groves}) {
    std::size_t held = 0, held_truthful = 0;
    std::vector<std::string> failed;
    double slowest = 0;
    for (const auto& base : cases) {
      const Scenario sc = with_kind(base, kind);
      const Mechanism mech(sc);
      const auto start = Clock::now();
      const auto r = check_conditional_dominance(mech);
      slowest = std::max(slowest, seconds_since(start));
      if (r.holds) {
        ++held;
      } else {
        failed.push_back(sc.name);
        if (failed.size() <= 2) c.note(to_string(kind) + " " + sc.name + ": " + r.witnesses.front().description);
      }
      held_truthful += check_conditional_dominance(mech, truthful).holds;
    }
    std::string names;
    for (std::size_t k = 0; k < failed.size() && k < 4; ++k) names += (k ? ", " : "") + failed[k];
    if (failed.size() > 4) names += ", ...";
    c.expect(held == cases.size(), to_string(kind) + (kind == SchemeKind::groves ? " (y = 0)" : "") + ": dominance holds on " +
                                       str(held) + "/" + str(cases.size()) + (failed.empty() ? "" : " (fails: " + names + ")"));
    c.expect(slowest < 60.0, to_string(kind) + ": slowest scenario " + str(slowest) + " s (< 60 s)");
    c.note(to_string(kind) + ": with opponents fixed to truthful play, dominance holds on " + str(held_truthful) + "/" +
           str(cases.size()));
  }
  Scenario ab = load_fixture("example2");
  SchemeConfig s = ab.scheme;
  s.awareness_premium = false;
  ab = with_scheme(ab, s);
  const Mechanism mech(ab);
  const auto r = check_conditional_dominance(mech);
  const bool concealment = !r.holds && r.witnesses.front().play &&
                           r.witnesses.front().play->final_pooled() != r.witnesses.front().reference->final_pooled();
  c.expect(concealment, "clarke without a-terms fails on example2 with a concealment witness" +
                            (r.holds ? std::string(" (it holds)") : ": " + r.witnesses.front().description));
}

void criterion4(Criterion& c) {
  std::size_t checked = 0, held = 0, total = 0;
  std::vector<Scenario> all;
  for (const auto& name : fixture_names()) all.push_back(load_fixture(name));
  for (auto v : {GeneratorVariant::general, GeneratorVariant::nonnegative, GeneratorVariant::procurement,
                 GeneratorVariant::separable})
    for (auto& sc : generated(v, 25)) all.push_back(std::move(sc));
  for (const auto& sc : all) {
    const auto r = check_stage_bound(sc);
    ++total;
    held += r.holds;
    checked += r.checked;
    if (!r.holds) c.note(sc.name + ": " + r.witnesses.front().description);
  }
  c.expect(held == total, "truthful transcripts stop within 3 stages on " + str(held) + "/" + str(total) +
                              " scenarios (" + str(checked) + " transcripts)");
}

void criterion5(Criterion& c) {
  std::size_t held = 0, total = 0;
  std::vector<Scenario> all;
  for (const auto& name : fixture_names()) all.push_back(load_fixture(name));
  for (auto v : {GeneratorVariant::general, GeneratorVariant::nonnegative, GeneratorVariant::procurement,
                 GeneratorVariant::separable})
    for (auto& sc : generated(v, 20)) all.push_back(with_kind(sc, SchemeKind::clarke));
  for (const auto& sc : all) {
    const Mechanism mech(sc);
    const auto r = check_budget(mech, BudgetMode::no_deficit);
    ++total;
    held += r.holds;
    if (!r.holds) c.note(sc.name + ": " + r.witnesses.front().description);
  }
  c.expect(held == total, "clarke no-deficit holds on " + str(held) + "/" + str(total) + " scenarios");

  // Discrimination: a balanced groves scheme, then one y entry made adversarial.
  const Scenario sep = generate_scenario(4, {GeneratorVariant::separable});
  const auto sol = find_g(sep);
  if (!sol.g) {
    c.expect(false, "separable instance decomposes");
    return;
  }
  auto groves_for = [&](const GTable& g) {
    SchemeConfig s = sep.scheme;
    s.kind = SchemeKind::groves;
    s.y = derive_y_from_g(sep, g);
    s.y_default.reset();
    return with_scheme(sep, s);
  };
  const Scenario good = groves_for(*sol.g);
  c.expect(check_budget(Mechanism(good), BudgetMode::balance).holds, "groves with y from g balances on " + sep.name);
  GTable g = *sol.g;
  const auto key = g.rbegin()->first;
  g[key] -= Rational(3, 2);
  const Scenario bad = groves_for(g);
  const auto r = check_budget(Mechanism(bad), BudgetMode::balance);
  bool pinpointed = !r.holds;
  const auto& [agent, level, opp] = key;
  for (const auto& w : r.witnesses)
    pinpointed = pinpointed && w.play->final_pooled() == level && opponents_of(w.play->final_profile(), agent) == opp;
  c.expect(pinpointed, "adversarial y entry (agent " + sep.types.agent_name(agent) + ", level " +
                           sep.lattice().name(level) + ") breaks balance and every witness sits on that entry" +
                           (r.witnesses.empty() ? std::string() : ": " + r.witnesses.front().description));
}

void criterion6(Criterion& c) {
  std::size_t ok = 0;
  const std::size_t n = 20;
  for (const auto& sc : generated(GeneratorVariant::separable, n)) {
    const auto sol = find_g(sc);
    if (!sol.g || !check_holmstrom(sc, *sol.g).holds) continue;
    SchemeConfig s = sc.scheme;
    s.kind = SchemeKind::groves;
    s.y = derive_y_from_g(sc, *sol.g);
    s.y_default.reset();
    const Scenario groves = with_scheme(sc, s);
    ok += check_budget(Mechanism(groves), BudgetMode::balance).holds;
  }
  c.expect(ok == n, "separable: find_g, derive_y_from_g and exact balance on " + str(ok) + "/" + str(n));
  std::size_t certs = 0, generic = 0;
  for (const auto& sc : generated(GeneratorVariant::general, 20)) {
    const auto sol = find_g(sc);
    if (sol.g) continue;
    ++generic;
    certs += sol.certificate && verify_certificate(sc, *sol.certificate);
  }
  c.expect(generic > 0 && certs == generic, "generic: verified infeasibility certificates on " + str(certs) + "/" +
                                                str(generic) + " non-decomposable scenarios");
}

void criterion7(Criterion& c) {
  std::size_t held = 0, total = 0;
  std::vector<Scenario> all = generated(GeneratorVariant::nonnegative, 25);
  for (auto& sc : generated(GeneratorVariant::general, 25))
    if (check_nonnegative_valuations(sc).holds) all.push_back(std::move(sc));
  for (auto& sc : generated(GeneratorVariant::separable, 25))
    if (check_nonnegative_valuations(sc).holds) all.push_back(std::move(sc));
  for (const auto& sc : all) {
    const Mechanism mech(sc);
    const auto r = check_participation(mech, ParticipationMode::ex_ante_anticipated);
    ++total;
    held += r.holds;
    if (!r.holds) c.note(sc.name + ": " + r.witnesses.front().description);
  }
  c.expect(total >= 25 && held == total, "clarke ex-ante anticipated participation holds on " + str(held) + "/" +
                                             str(total) + " scenarios with nonnegative valuations");
  const Scenario e1 = load_fixture("example1");
  const Mechanism mech(e1);
  const auto r = check_participation(mech, ParticipationMode::ex_post);
  const bool agent1 = !r.holds && r.witnesses.front().agent == std::optional<AgentId>(0) &&
                      r.witnesses.front().play_value < 0;
  c.expect(agent1, "clarke ex-post participation fails on example1 with an agent-1 witness" +
                       (r.holds ? std::string(" (it holds)") : ": " + r.witnesses.front().description));
  const ElaborationEngine engine(e1.types);
  const NatureDraw& d = e1.draw("base");
  const auto report = mech.transfers(engine.run_truthful(d, e1.lattice().top()));
  const Rational u1 = mech.utility(0, d.true_types[0], report);
  c.expect(u1 < 0, "base draw: seller 1 ends with utility " + to_string(u1) + " (< 0)");
}

void criterion8(Criterion& c) {
  const Scenario sc = load_fixture("example4r");
  const Mechanism mech(sc);
  const auto ante = check_participation(mech, ParticipationMode::ex_ante_anticipated);
  c.expect(ante.holds, "example4r: ex-ante anticipated participation " + std::string(ante.holds ? "holds" : "fails"));
  const auto post = check_participation(mech, ParticipationMode::ex_post);
  bool interim = false;
  for (const auto& w : post.witnesses) interim = interim || (!w.history.empty() && w.play_value < 0);
  c.expect(!post.holds && interim, "example4r: ex-post participation violated at an interim information set" +
                                       (post.holds ? std::string() : ": " + post.witnesses.front().description));
  const ElaborationEngine engine(sc.types);
  const auto r = mech.transfers(engine.run_truthful(sc.draws.front(), sc.lattice().top()));
  c.note("reconstructed draw: i* = " + recipient(sc, r.premium_recipient) + ", transfers " + show(r.transfers) +
         ", u_1 = " + to_string(mech.utility(0, sc.draws.front().true_types[0], r)));
}

void criterion9(Criterion& c) {
  const auto all = generated(GeneratorVariant::procurement, 20);
  std::size_t balanced = 0, participates = 0, dominant = 0, dominant_truthful = 0;
  VerifierOptions truthful;
  truthful.opponents = OpponentModel::truthful;
  std::vector<std::string> failed;
  for (const auto& sc : all) {
    const Mechanism mech(sc);
    balanced += check_budget(mech, BudgetMode::balance).holds;
    participates += check_participation(mech, ParticipationMode::ex_post).holds;
    const auto d = check_conditional_dominance(mech);
    dominant += d.holds;
    if (!d.holds && failed.size() < 2) failed.push_back(sc.name + ": " + d.witnesses.front().description);
    dominant_truthful += check_conditional_dominance(mech, truthful).holds;
  }
  const std::string n = "/" + str(all.size());
  c.expect(balanced == all.size(), "rspa exact budget balance on " + str(balanced) + n);
  c.expect(participates == all.size(), "every seller's ex-post utility >= 0 on " + str(participates) + n);
  c.expect(dominant == all.size(), "conditional dominance (sellers) on " + str(dominant) + n);
  for (const auto& f : failed) c.note(f);
  c.note("with opponents fixed to truthful play, dominance holds on " + str(dominant_truthful) + n);
}

void criterion10(Criterion& c) {
  const auto start = Clock::now();
  const auto s = structural::run(120);
  const double secs = seconds_since(start);
  c.expect(s.structures_ok == s.structures, "lattice, projection and pooled-monotonicity axioms on " +
                                                str(s.structures_ok) + "/" + str(s.structures) + " seeded structures (" +
                                                str(s.transcripts) + " transcripts)");
  c.expect(s.mutations_rejected == s.mutations,
           "mutated inputs rejected with the expected violation: " + str(s.mutations_rejected) + "/" + str(s.mutations));
  c.expect(s.posets_agree == s.posets, "lattice validation agrees with brute force on " + str(s.posets_agree) + "/" +
                                           str(s.posets) + " random orders");
  for (const auto& f : s.failures) c.note(f);
  c.expect(secs < 30.0, "runtime " + str(secs) + " s (< 30 s)");
}

const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> kCriteria{
    {"Example 1 reproduction", criterion1},
    {"Example 2 reproduction", criterion2},
    {"conditional dominance at desk scale", criterion3},
    {"three-stage bound", criterion4},
    {"no deficit and budget discrimination", criterion5},
    {"Holmstrom round trip", criterion6},
    {"participation under nonnegative valuations", criterion7},
    {"reconstructed interim participation failure", criterion8},
    {"reverse second-price auction", criterion9},
    {"structural property suite", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--criterion" && k + 1 < argc) {
      which.push_back(std::strtoul(argv[++k], nullptr, 10));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (which.empty())
    for (std::size_t k = 1; k <= kCriteria.size(); ++k) which.push_back(k);

  bool all = true;
  for (std::size_t k : which) {
    if (k < 1 || k > kCriteria.size()) {
      std::cerr << "no criterion " << k << "\n";
      return 2;
    }
    Criterion c;
    const auto start = Clock::now();
    try {
      kCriteria[k - 1].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k << " " << (c.ok() ? "PASS" : "FAIL") << "  " << kCriteria[k - 1].first << " ("
              << seconds_since(start) << " s)\n";
    for (const auto& line : c.lines()) std::cout << "    " << line << "\n";
    all = all && c.ok();
  }
  return all ? 0 : 1;
}
