#include "koszulcone/fixtures.hpp"

namespace koszulcone {

const std::vector<Fixture>& builtin_fixtures() {
  static const std::vector<Fixture> all = {
      {"conca", R"ring(# Koszul, but (b) has a quadratic annihilator generator
field p=101
vars a b c d
rel a*c
rel a*d
rel a*b - b*d
rel a^2 + b*c
rel b^2
ideal b
)ring"},
      {"hhr_example", R"ring(# (x1*x2, x2*x3) in k[x1,x2,x3]/(x1*x3, x3^2)
field p=101
vars x1 x2 x3
rel x1*x3
rel x3^2
ideal x1*x2, x2*x3
)ring"},
      {"md_squares_n3_d2", R"ring(# m^2 in k[x1,x2,x3]/(x1^2, x2^2, x3^2), lex order
field p=101
vars x1 x2 x3
rel x1^2
rel x2^2
rel x3^2
ideal x1*x2, x1*x3, x2*x3
)ring"},
      {"mixed_degree", R"ring(field p=101
vars x1 x2 x3
ideal x1, x2*x3
)ring"},
      {"poly_m2_n3", R"ring(field p=101
vars x1 x2 x3
ideal x1^2, x1*x2, x1*x3, x2^2, x2*x3, x3^2
)ring"},
      {"poly_mixed", R"ring(# stable, generated in degrees 1 and 2
field p=101
vars x1 x2 x3
ideal x1, x2^2, x2*x3
)ring"},
      {"poly_stable_a", R"ring(field p=101
vars x1 x2 x3
ideal x1^2, x1*x2, x1*x3, x2^2
)ring"},
      {"poly_stable_b", R"ring(field p=101
vars x1 x2 x3
ideal x1^2, x1*x2, x1*x3, x2^2, x2*x3
)ring"},
      {"star_counter", R"ring(field p=101
vars x1 x2
rel x1^2
ideal x1*x2, x2^2
)ring"},
  };
  return all;
}

std::optional<std::string_view> builtin_fixture(std::string_view name) {
  for (const auto& f : builtin_fixtures())
    if (f.name == name) return f.text;
  return std::nullopt;
}

}  // namespace koszulcone
