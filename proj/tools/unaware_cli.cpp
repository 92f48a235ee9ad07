// Command-line driver: run, verify, report, fixtures.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "unaware/elaboration.hpp"
#include "unaware/fixtures.hpp"
#include "unaware/generator.hpp"
#include "unaware/report.hpp"
#include "unaware/scenario_io.hpp"
#include "unaware/verifier.hpp"

using namespace unaware;

namespace {

enum Exit { kOk = 0, kViolation = 1, kInput = 2, kBound = 3 };

const std::vector<std::string> kProperties = {
    "efficiency", "pooled-implementation", "dominance", "stage-bound", "no-deficit", "balance",
    "participation-ex-post", "participation-ex-ante", "nonnegative-valuations", "holmstrom"};
const std::vector<std::string> kAll = {"efficiency", "pooled-implementation", "dominance", "stage-bound", "no-deficit"};

Scenario load_any(const std::string& what) {
  if (std::filesystem::exists(what)) return load_scenario(what);
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), what) != names.end()) return load_fixture(what);
  throw Error("IoError", "'" + what + "' is neither a file nor a built-in fixture");
}

Scenario apply_scheme(const Scenario& sc, const std::string& scheme, bool ablate, const std::string& y_default = {}) {
  SchemeConfig s = sc.scheme;
  if (!scheme.empty()) s.kind = parse_scheme_kind(scheme);
  if (!y_default.empty()) s.y_default = parse_rational(y_default);
  if (ablate) s.awareness_premium = false;
  return with_scheme(sc, s);
}

void write_json(const nlohmann::ordered_json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::vector<Strategy> strategies_from(const Scenario& sc, const std::string& spec) {
  auto out = truthful_strategies(sc.agent_count());
  if (spec.empty() || spec == "truth") return out;
  std::ifstream in(spec);
  if (!in) throw Error("IoError", "cannot read strategy file '" + spec + "'");
  // Each line: <agent> <report at stage 1> <report at stage 2> ...; truth afterwards.
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream words(line);
    std::string agent;
    if (!(words >> agent)) continue;
    const AgentId i = sc.types.agent(agent);
    std::vector<TypeId> script;
    for (std::string t; words >> t;) script.push_back(sc.types.type(i, t));
    out[i] = scripted_strategy(script);
  }
  return out;
}

void print_run(const nlohmann::ordered_json& j, std::ostream& os) {
  os << "scenario " << j["scenario"].get<std::string>() << ", scheme " << j["scheme"].get<std::string>() << ", draw "
     << j["draw"]["name"].get<std::string>() << "\n";
  for (const auto& s : j["stages"]) {
    os << "  stage " << s["stage"].get<std::size_t>() << ":";
    for (const auto& [agent, type] : s["profile"].items()) os << " " << agent << "=" << type.get<std::string>();
    os << "  pooled " << s["pooled"].get<std::string>() << "\n";
  }
  os << "stopped at stage " << j["stop_stage"].get<std::size_t>() << "\n";
  os << "outcome " << j["outcome"].get<std::string>() << "\n";
  os << "premium recipient "
     << (j["premium_recipient"].is_null() ? std::string("none") : j["premium_recipient"].get<std::string>()) << "\n";
  for (const char* field : {"transfers", "utilities"}) {
    os << field << ":";
    for (const auto& [agent, v] : j[field].items())
      if (agent.find("_approx") == std::string::npos) os << " " << agent << "=" << v.get<std::string>();
    os << "\n";
  }
  os << "operator balance " << j["operator_balance"].get<std::string>() << "\n";
}

VerificationResult run_property(const std::string& p, const Scenario& sc, const VerifierOptions& opt) {
  const Mechanism mech(sc);
  if (p == "efficiency") return check_efficiency(sc, {}, opt);
  if (p == "pooled-implementation") return check_pooled_implementation(mech, opt);
  if (p == "dominance") return check_conditional_dominance(mech, opt);
  if (p == "stage-bound") return check_stage_bound(sc, opt);
  if (p == "no-deficit") return check_budget(mech, BudgetMode::no_deficit, opt);
  if (p == "balance") return check_budget(mech, BudgetMode::balance, opt);
  if (p == "participation-ex-post") return check_participation(mech, ParticipationMode::ex_post, opt);
  if (p == "participation-ex-ante") return check_participation(mech, ParticipationMode::ex_ante_anticipated, opt);
  if (p == "nonnegative-valuations") return check_nonnegative_valuations(sc, opt);
  // holmstrom: does a budget-balancing decomposition exist?
  const HolmstromSolution sol = find_g(sc);
  if (sol.g) return check_holmstrom(sc, *sol.g);
  VerificationResult r;
  r.property = "holmstrom";
  r.holds = false;
  Witness w;
  w.description = "no decomposition at level '" + sc.lattice().name(sol.certificate->level) +
                  "'; the certificate combines " + std::to_string(sol.certificate->combination.size()) + " profiles";
  for (const auto& [t, c] : sol.certificate->combination) w.history.push_back(t);
  w.gap = sol.certificate->residual;
  r.witnesses.push_back(w);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic elaboration mechanisms under unawareness"};
  app.require_subcommand(1);

  std::string scenario_arg, draw_name, scheme, partial, strategy, report_path, y_default;
  bool ablate = false;
  auto* run = app.add_subcommand("run", "Play a draw and print the transcript and transfers");
  run->add_option("scenario", scenario_arg, "Scenario file or fixture name")->required();
  run->add_option("--draw", draw_name, "Named draw (default: first)");
  run->add_option("--scheme", scheme, "groves | clarke | rspa | static-vickrey");
  run->add_option("--y-default", y_default, "groves: y value for entries the scenario omits");
  run->add_option("--partial", partial, "Partial-game level (default: top)");
  run->add_option("--strategy", strategy, "'truth' or a strategy file");
  run->add_option("--report", report_path, "Write the JSON report here");
  run->add_flag("--no-awareness-premium", ablate, "Drop the awareness adjustments");

  std::vector<std::string> properties, expect_fail;
  bool all = false;
  std::size_t generated = 0, bound = 1'000'000;
  std::uint64_t seed = 1;
  std::string variant = "general";
  std::string opponents = "arbitrary";
  auto* verify = app.add_subcommand("verify", "Check properties; exit 1 on an unexpected violation");
  verify->add_option("scenario", scenario_arg, "Scenario file or fixture name");
  verify->add_option("--generated", generated, "Check N generated scenarios instead");
  verify->add_option("--seed", seed, "First seed for --generated");
  verify->add_option("--variant", variant, "general | nonnegative | procurement | separable");
  verify->add_option("--property", properties, "Property to check (repeatable)")
      ->check(CLI::IsMember(kProperties));
  verify->add_flag("--all", all, "efficiency, pooled-implementation, dominance, stage-bound, no-deficit");
  verify->add_option("--expect-fail", expect_fail, "Property whose failure is expected")->check(CLI::IsMember(kProperties));
  verify->add_option("--scheme", scheme, "Scheme override");
  verify->add_option("--y-default", y_default, "groves: y value for entries the scenario omits");
  verify->add_option("--bound", bound, "Enumeration bound");
  verify->add_option("--opponents", opponents, "Dominance quantifies over 'arbitrary' or 'truthful' opponents")
      ->check(CLI::IsMember({"arbitrary", "truthful"}));
  verify->add_option("--report", report_path, "Write the JSON report here");
  verify->add_flag("--no-awareness-premium", ablate, "Drop the awareness adjustments");

  auto* report = app.add_subcommand("report", "Full JSON report: every draw played plus all checks");
  report->add_option("scenario", scenario_arg, "Scenario file or fixture name")->required();
  report->add_option("--scheme", scheme, "Scheme override");
  report->add_option("--y-default", y_default, "groves: y value for entries the scenario omits");
  report->add_option("--bound", bound, "Enumeration bound");
  report->add_option("--out", report_path, "Output file (default: stdout)");

  std::string dump, write_dir;
  auto* fixtures = app.add_subcommand("fixtures", "List, print or export the built-in scenarios");
  fixtures->add_option("--dump", dump, "Print one fixture's scenario text");
  fixtures->add_option("--write", write_dir, "Write every fixture as <dir>/<name>.scn");
  std::optional<unsigned> gen_seed;
  std::string gen_variant = "general";
  fixtures->add_option("--generate", gen_seed, "Print the generated scenario for this seed");
  fixtures->add_option("--generate-variant", gen_variant, "general | nonnegative | procurement | separable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (*fixtures) {
      if (gen_seed) {
        GeneratorOptions opt;
        opt.variant = parse_generator_variant(gen_variant);
        std::cout << serialize_scenario(generate_scenario(*gen_seed, opt));
      } else if (!dump.empty()) {
        std::cout << fixture_text(dump);
      } else if (!write_dir.empty()) {
        std::filesystem::create_directories(write_dir);
        for (const auto& name : fixture_names()) {
          std::ofstream(std::filesystem::path(write_dir) / (name + ".scn")) << fixture_text(name);
          std::cout << name << ".scn\n";
        }
      } else {
        for (const auto& name : fixture_names()) std::cout << name << "\n";
      }
      return kOk;
    }

    if (*run) {
      const Scenario sc = apply_scheme(load_any(scenario_arg), scheme, ablate, y_default);
      if (sc.draws.empty()) throw Error("NoDraw", "scenario has no [draw] section");
      const NatureDraw& draw = draw_name.empty() ? sc.draws.front() : sc.draw(draw_name);
      const Level level = partial.empty() ? sc.lattice().top() : sc.lattice().level(partial);
      const Mechanism mech(sc);
      ElaborationEngine engine(sc.types);
      const Transcript t = sc.scheme.kind == SchemeKind::static_vickrey
                               ? engine.run_static(draw, level)
                               : engine.run(draw, level, strategies_from(sc, strategy));
      const auto j = run_json(mech, draw, level, t);
      print_run(j, std::cout);
      write_json(j, report_path);
      return kOk;
    }

    if (*report) {
      const Scenario sc = apply_scheme(load_any(scenario_arg), scheme, false, y_default);
      const Mechanism mech(sc);
      ElaborationEngine engine(sc.types);
      VerifierOptions opt;
      opt.bound = bound;
      nlohmann::ordered_json j;
      j["scenario"] = sc.name;
      j["scheme"] = to_string(sc.scheme.kind);
      j["runs"] = nlohmann::ordered_json::array();
      for (const auto& d : sc.draws) {
        const Level top = sc.lattice().top();
        const Transcript t =
            sc.scheme.kind == SchemeKind::static_vickrey ? engine.run_static(d, top) : engine.run_truthful(d, top);
        j["runs"].push_back(run_json(mech, d, top, t));
      }
      j["results"] = nlohmann::ordered_json::array();
      for (const auto& p : kProperties) j["results"].push_back(result_json(sc, run_property(p, sc, opt)));
      if (report_path.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        write_json(j, report_path);
      }
      return kOk;
    }

    // verify
    if (all) properties.insert(properties.end(), kAll.begin(), kAll.end());
    if (properties.empty()) throw Error("NoProperty", "give --property or --all");
    std::vector<Scenario> scenarios;
    if (generated > 0) {
      GeneratorOptions g;
      g.variant = parse_generator_variant(variant);
      for (std::size_t k = 0; k < generated; ++k) scenarios.push_back(generate_scenario(seed + k, g));
    } else {
      if (scenario_arg.empty()) throw Error("NoScenario", "give a scenario or --generated N");
      scenarios.push_back(load_any(scenario_arg));
    }
    VerifierOptions opt;
    opt.bound = bound;
    opt.opponents = opponents == "truthful" ? OpponentModel::truthful : OpponentModel::arbitrary;
    nlohmann::ordered_json j;
    j["scenarios"] = nlohmann::ordered_json::array();
    bool unexpected = false;
    for (const auto& raw : scenarios) {
      const Scenario sc = apply_scheme(raw, scheme, ablate, y_default);
      nlohmann::ordered_json sj;
      sj["scenario"] = sc.name;
      sj["scheme"] = to_string(sc.scheme.kind);
      sj["results"] = nlohmann::ordered_json::array();
      for (const auto& p : properties) {
        const auto r = run_property(p, sc, opt);
        const bool expected = std::find(expect_fail.begin(), expect_fail.end(), p) != expect_fail.end();
        if (r.holds == expected) unexpected = true;
        std::cout << sc.name << " " << p << ": " << (r.holds ? "holds" : "fails") << " (" << r.checked << " checked)"
                  << (expected ? " [expected to fail]" : "") << "\n";
        for (const auto& w : r.witnesses) std::cout << "    " << w.description << "\n";
        sj["results"].push_back(result_json(sc, r));
      }
      j["scenarios"].push_back(sj);
    }
    write_json(j, report_path);
    return unexpected ? kViolation : kOk;
  } catch (const StrategySpaceTooLarge& e) {
    std::cerr << e.what() << "\n";
    return kBound;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << v.code << ": " << v.message << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kInput;
  }
}
