#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "unaware/scenario.hpp"

namespace unaware {

/// Built-in scenarios: example1, example2, example4r (reconstructed values).
std::vector<std::string> fixture_names();
/// Scenario text of a fixture. Throws Error("UnknownFixture").
const std::string& fixture_text(std::string_view name);
Scenario load_fixture(std::string_view name);

}  // namespace unaware
