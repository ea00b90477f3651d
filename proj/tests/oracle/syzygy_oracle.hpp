#pragma once

// Graded Betti numbers of A/J by brute force over F_p: degree by degree, the
// kernel of the previous differential is compared with the image of the
// generators found so far, and a complement supplies the new generators.
// Shares no code with the library.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Exponents = std::vector<int>;

struct Term {
  std::int64_t num;
  std::int64_t den;
  Exponents mono;
};

struct Ring {
  std::uint32_t p = 101;
  std::size_t n = 0;
  std::vector<std::vector<Term>> relations;  // homogeneous quadrics
};

/// beta_{l,j}(A/J) for 0 <= l <= max_l and j <= max_j; zero entries omitted.
std::map<std::pair<int, int>, std::size_t> betti_numbers(const Ring& ring, const std::vector<Exponents>& ideal,
                                                         int max_l, int max_j);

/// dim_k A_d.
std::size_t hilbert(const Ring& ring, int d);

}  // namespace oracle
