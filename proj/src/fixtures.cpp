#include "unaware/fixtures.hpp"

#include <map>

#include "fixture_data.hpp"
#include "unaware/scenario_io.hpp"

namespace unaware {

namespace {

const std::map<std::string, std::string, std::less<>>& table() {
  static const std::map<std::string, std::string, std::less<>> t = {
      {"example1", detail::kExample1}, {"example2", detail::kExample2}, {"example4r", detail::kExample4r}};
  return t;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : table()) out.push_back(name);
  return out;
}

const std::string& fixture_text(std::string_view name) {
  auto it = table().find(name);
  if (it == table().end()) throw Error("UnknownFixture", "'" + std::string(name) + "'");
  return it->second;
}

Scenario load_fixture(std::string_view name) { return parse_scenario(fixture_text(name), std::string(name)); }

}  // namespace unaware
