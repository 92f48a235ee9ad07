#include "unaware/scenario_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace unaware {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
};

std::vector<std::string> split(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    std::istringstream in{std::string(text)};
    std::size_t number = 0;
    for (std::string raw; std::getline(in, raw);) {
      ++number;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      auto words = split(raw);
      if (!words.empty()) lines_.push_back({number, std::move(words)});
    }
  }

  Scenario parse() {
    read_sections();
    const auto lattice = validate_lattice(lattice_spec_);
    if (!lattice.ok()) fail_validation(lattice.violations, "lattice");
    const auto types = validate_structure(lattice.get(), types_spec_);
    if (!types.ok()) {
      std::vector<Violation> located_types;
      for (const auto& v : types.violations) {
        const bool edge = v.code == "MissingProjection" || v.code == "BadProjection" || v.code == "NotSurjective" ||
                          v.code == "CompositionFailure";
        located_types.push_back(at(v, edge && projection_line_ ? "projections" : "types"));
      }
      throw ValidationError(located_types);
    }
    const auto outcomes = validate_outcomes(types.get(), outcome_spec_);
    if (!outcomes.ok()) fail_validation(outcomes.violations, "outcomes");

    Scenario sc{name_, types.get(), outcomes.get(), {}, {}};
    sc.scheme = build_scheme(sc);
    if (auto v = validate_scheme(sc, sc.scheme); !v.empty()) fail_validation(v, "scheme");
    for (const auto& pending : draws_) sc.draws.push_back(build_draw(sc, pending));
    for (std::size_t k = 0; k < sc.draws.size(); ++k) {
      try {
        sc.types.check_draw(sc.draws[k]);
      } catch (const ValidationError& e) {
        located(e.violations(), draws_[k].line);
      }
    }
    return sc;
  }

 private:
  struct PendingDraw {
    std::string name;
    std::size_t line = 0;
    std::vector<Line> entries;
  };

  [[noreturn]] void error(const Line& l, const std::string& message) const {
    throw ParseError(source_, l.number, message);
  }

  void expect(const Line& l, std::size_t min_words, const char* usage) const {
    if (l.words.size() < min_words) error(l, std::string("expected '") + usage + "'");
  }

  Rational rational(const Line& l, const std::string& text) const {
    try {
      return parse_rational(text);
    } catch (const std::exception&) {
      error(l, "'" + text + "' is not a rational");
    }
  }

  Violation at(const Violation& v, const std::string& section) const {
    auto it = section_line_.find(section);
    const std::size_t line = it == section_line_.end() ? 0 : it->second;
    return {v.code, source_ + ":" + std::to_string(line) + ": " + v.message};
  }

  [[noreturn]] void located(const std::vector<Violation>& violations, std::size_t line) const {
    std::vector<Violation> out;
    for (const auto& v : violations) out.push_back({v.code, source_ + ":" + std::to_string(line) + ": " + v.message});
    throw ValidationError(out);
  }

  [[noreturn]] void fail_validation(const std::vector<Violation>& violations, const std::string& section) const {
    auto it = section_line_.find(section);
    located(violations, it == section_line_.end() ? 0 : it->second);
  }

  void read_sections() {
    std::string section;
    for (const Line& l : lines_) {
      const auto& w = l.words;
      if (w[0].front() == '[') {
        std::string header;
        for (const auto& x : w) header += (header.empty() ? "" : " ") + x;
        if (header.back() != ']') error(l, "unterminated section header");
        header = header.substr(1, header.size() - 2);
        auto parts = split(header);
        if (parts.empty()) error(l, "empty section header");
        section = parts[0];
        if (section == "draw") {
          if (parts.size() != 2) error(l, "expected '[draw <name>]'");
          draws_.push_back({parts[1], l.number, {}});
        } else if (section == "lattice" || section == "agents" || section == "types" || section == "projections" ||
                   section == "outcomes" || section == "valuations" || section == "scheme") {
          if (section_line_.count(section)) error(l, "duplicate section [" + section + "]");
          section_line_[section] = l.number;
          if (section == "projections") projection_line_ = l.number;
        } else {
          error(l, "unknown section [" + section + "]");
        }
        continue;
      }
      if (section.empty()) {
        if (w[0] != "scenario" || w.size() != 2) error(l, "expected 'scenario <name>' before the first section");
        name_ = w[1];
      } else if (section == "lattice") {
        lattice_entry(l);
      } else if (section == "agents") {
        if (w[0] != "agent" || w.size() != 2) error(l, "expected 'agent <name>'");
        agent_index_[w[1]] = types_spec_.agents.size();
        types_spec_.agents.push_back(w[1]);
        types_spec_.types.emplace_back();
        types_spec_.projections.emplace_back();
      } else if (section == "types") {
        if (w[0] != "type") error(l, "expected 'type <agent> <level> <name>...'");
        expect(l, 4, "type <agent> <level> <name>...");
        const AgentId i = agent_of(l, w[1]);
        for (std::size_t k = 3; k < w.size(); ++k) types_spec_.types[i].emplace_back(w[k], w[2]);
      } else if (section == "projections") {
        if (w[0] != "project" || w.size() != 4) error(l, "expected 'project <agent> <from> <to>'");
        types_spec_.projections[agent_of(l, w[1])].emplace_back(w[2], w[3]);
      } else if (section == "outcomes") {
        outcome_entry(l);
      } else if (section == "valuations") {
        if (w[0] != "value" || w.size() != 5) error(l, "expected 'value <agent> <type> <outcome> <rational>'");
        agent_of(l, w[1]);
        outcome_spec_.valuations.emplace_back(w[1], w[2], w[3], rational(l, w[4]));
      } else if (section == "scheme") {
        scheme_lines_.push_back(l);
      } else if (section == "draw") {
        draws_.back().entries.push_back(l);
      }
    }
    if (!section_line_.count("lattice")) throw ParseError(source_, 0, "missing [lattice] section");
    if (!section_line_.count("agents")) throw ParseError(source_, 0, "missing [agents] section");
  }

  void lattice_entry(const Line& l) {
    const auto& w = l.words;
    if (w[0] == "level") {
      expect(l, 2, "level <name>...");
      for (std::size_t k = 1; k < w.size(); ++k) lattice_spec_.elements.push_back(w[k]);
    } else if (w[0] == "edge" && w.size() == 3) {
      lattice_spec_.order.emplace_back(w[1], w[2]);
    } else {
      error(l, "expected 'level <name>...' or 'edge <lower> <upper>'");
    }
  }

  void outcome_entry(const Line& l) {
    const auto& w = l.words;
    if (w[0] == "outcome") {
      expect(l, 2, "outcome <name>...");
      for (std::size_t k = 1; k < w.size(); ++k) outcome_spec_.outcomes.push_back(w[k]);
    } else if (w[0] == "available") {
      expect(l, 2, "available <level> <outcome>...");
      outcome_spec_.available.emplace_back(w[1], std::vector<std::string>(w.begin() + 2, w.end()));
    } else if (w[0] == "tiebreak") {
      outcome_spec_.tie_break.assign(w.begin() + 1, w.end());
    } else {
      error(l, "expected 'outcome', 'available' or 'tiebreak'");
    }
  }

  AgentId agent_of(const Line& l, const std::string& name) const {
    auto it = agent_index_.find(name);
    if (it == agent_index_.end()) error(l, "unknown agent '" + name + "'");
    return it->second;
  }

  Outcome outcome_of(const Scenario& sc, const Line& l, const std::string& name) const {
    auto x = sc.outcomes.find(name);
    if (!x) error(l, "unknown outcome '" + name + "'");
    return *x;
  }

  Level level_of(const Scenario& sc, const Line& l, const std::string& name) const {
    auto x = sc.lattice().find(name);
    if (!x) error(l, "unknown level '" + name + "'");
    return *x;
  }

  TypeId type_of(const Scenario& sc, const Line& l, AgentId i, const std::string& name) const {
    auto t = sc.types.find_type(i, name);
    if (!t) error(l, "unknown type '" + name + "' of agent '" + sc.types.agent_name(i) + "'");
    return *t;
  }

  SchemeConfig build_scheme(const Scenario& sc) const {
    SchemeConfig s;
    const std::size_t n = sc.agent_count();
    for (const Line& l : scheme_lines_) {
      const auto& w = l.words;
      if (w[0] == "kind" && w.size() == 2) {
        try {
          s.kind = parse_scheme_kind(w[1]);
        } catch (const Error&) {
          error(l, "unknown scheme kind '" + w[1] + "'");
        }
      } else if (w[0] == "buyer" && w.size() == 2) {
        s.buyer = agent_of(l, w[1]);
      } else if (w[0] == "supplies" && w.size() == 3) {
        s.supplies.resize(n);
        s.supplies[agent_of(l, w[1])] = outcome_of(sc, l, w[2]);
      } else if (w[0] == "rspa_opt_out" && w.size() == 2 && (w[1] == "true" || w[1] == "false")) {
        s.rspa_opt_out = w[1] == "true";
      } else if (w[0] == "awareness_premium" && w.size() == 2 && (w[1] == "true" || w[1] == "false")) {
        s.awareness_premium = w[1] == "true";
      } else if (w[0] == "y_default" && w.size() == 2) {
        s.y_default = rational(l, w[1]);
      } else if (w[0] == "y") {
        // y <agent> <level> <opponent types in agent order> = <value>
        if (w.size() != n + 4 || w[w.size() - 2] != "=") {
          error(l, "expected 'y <agent> <level> <" + std::to_string(n - 1) + " opponent types> = <rational>'");
        }
        const AgentId i = agent_of(l, w[1]);
        const Level level = level_of(sc, l, w[2]);
        Profile opp;
        std::size_t k = 3;
        for (AgentId j = 0; j < n; ++j) {
          if (j == i) continue;
          opp.push_back(type_of(sc, l, j, w[k++]));
        }
        if (!s.y.emplace(OpponentKey{i, level, opp}, rational(l, w.back())).second) error(l, "duplicate y entry");
      } else {
        error(l, "unknown scheme entry '" + w[0] + "'");
      }
    }
    return s;
  }

  NatureDraw build_draw(const Scenario& sc, const PendingDraw& pending) const {
    const std::size_t n = sc.agent_count();
    NatureDraw d;
    d.name = pending.name;
    std::vector<std::optional<TypeId>> truth(n);
    std::vector<std::optional<Level>> aware(n);
    for (const Line& l : pending.entries) {
      const auto& w = l.words;
      if (w.size() != 3 || (w[0] != "true" && w[0] != "aware")) {
        error(l, "expected 'true <agent> <type>' or 'aware <agent> <level>'");
      }
      const AgentId i = agent_of(l, w[1]);
      if (w[0] == "true") {
        truth[i] = type_of(sc, l, i, w[2]);
      } else {
        aware[i] = level_of(sc, l, w[2]);
      }
    }
    for (AgentId i = 0; i < n; ++i) {
      if (!truth[i] || !aware[i]) {
        throw ParseError(source_, pending.line,
                         "draw '" + d.name + "' needs 'true' and 'aware' for agent '" + sc.types.agent_name(i) + "'");
      }
      d.true_types.push_back(*truth[i]);
      d.awareness.push_back(*aware[i]);
    }
    return d;
  }

  std::string source_;
  std::vector<Line> lines_;
  std::string name_ = "unnamed";
  std::map<std::string, std::size_t> section_line_;
  std::size_t projection_line_ = 0;
  LatticeSpec lattice_spec_;
  TypeStructureSpec types_spec_;
  std::map<std::string, AgentId> agent_index_;
  OutcomeModelSpec outcome_spec_;
  std::vector<Line> scheme_lines_;
  std::vector<PendingDraw> draws_;
};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) { return Parser(text, source).parse(); }

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const Scenario& sc) {
  const auto& lattice = sc.lattice();
  const auto& ts = sc.types;
  const auto& om = sc.outcomes;
  const std::size_t n = ts.agent_count();
  std::ostringstream out;
  out << "scenario " << sc.name << "\n\n[lattice]\n";
  for (Level l = 0; l < lattice.size(); ++l) out << "level " << lattice.name(l) << "\n";
  for (const auto& [lo, hi] : lattice.covering_pairs()) out << "edge " << lattice.name(lo) << " " << lattice.name(hi) << "\n";

  out << "\n[agents]\n";
  for (AgentId i = 0; i < n; ++i) out << "agent " << ts.agent_name(i) << "\n";

  out << "\n[types]\n";
  for (AgentId i = 0; i < n; ++i)
    for (TypeId t = 0; t < ts.type_count(i); ++t)
      out << "type " << ts.agent_name(i) << " " << lattice.name(ts.level_of(i, t)) << " " << ts.type_name(i, t) << "\n";

  out << "\n[projections]\n";
  for (AgentId i = 0; i < n; ++i) {
    for (TypeId t = 0; t < ts.type_count(i); ++t) {
      for (const auto& [lo, hi] : lattice.covering_pairs()) {
        if (hi != ts.level_of(i, t)) continue;
        out << "project " << ts.agent_name(i) << " " << ts.type_name(i, t) << " " << ts.type_name(i, ts.project(i, t, lo))
            << "\n";
      }
    }
  }

  out << "\n[outcomes]\noutcome";
  for (const auto& x : om.names()) out << " " << x;
  out << "\n";
  for (Level l = 0; l < lattice.size(); ++l) {
    out << "available " << lattice.name(l);
    for (Outcome x : om.available(l)) out << " " << om.name(x);
    out << "\n";
  }
  out << "tiebreak";
  for (Outcome x : om.tie_break_order()) out << " " << om.name(x);
  out << "\n";

  out << "\n[valuations]\n";
  for (AgentId i = 0; i < n; ++i)
    for (TypeId t = 0; t < ts.type_count(i); ++t)
      for (Outcome x = 0; x < om.size(); ++x)
        if (const auto& v = om.value_entry(i, t, x))
          out << "value " << ts.agent_name(i) << " " << ts.type_name(i, t) << " " << om.name(x) << " " << to_string(*v)
              << "\n";

  const auto& s = sc.scheme;
  out << "\n[scheme]\nkind " << to_string(s.kind) << "\n";
  if (s.buyer) out << "buyer " << ts.agent_name(*s.buyer) << "\n";
  for (AgentId i = 0; i < s.supplies.size(); ++i)
    if (s.supplies[i]) out << "supplies " << ts.agent_name(i) << " " << om.name(*s.supplies[i]) << "\n";
  if (s.rspa_opt_out) out << "rspa_opt_out true\n";
  if (!s.awareness_premium) out << "awareness_premium false\n";
  if (s.y_default) out << "y_default " << to_string(*s.y_default) << "\n";
  for (const auto& [key, v] : s.y) {
    const auto& [i, level, opp] = key;
    out << "y " << ts.agent_name(i) << " " << lattice.name(level);
    std::size_t k = 0;
    for (AgentId j = 0; j < n; ++j)
      if (j != i) out << " " << ts.type_name(j, opp[k++]);
    out << " = " << to_string(v) << "\n";
  }

  for (const auto& d : sc.draws) {
    out << "\n[draw " << d.name << "]\n";
    for (AgentId i = 0; i < n; ++i) out << "true " << ts.agent_name(i) << " " << ts.type_name(i, d.true_types[i]) << "\n";
    for (AgentId i = 0; i < n; ++i) out << "aware " << ts.agent_name(i) << " " << lattice.name(d.awareness[i]) << "\n";
  }
  return out.str();
}

}  // namespace unaware
