#pragma once

// Ring files shipped with the tool, also available without the fixtures/
// directory by name.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace koszulcone {

struct Fixture {
  std::string_view name;
  std::string_view text;
};

const std::vector<Fixture>& builtin_fixtures();
std::optional<std::string_view> builtin_fixture(std::string_view name);

}  // namespace koszulcone
