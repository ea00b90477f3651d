#include "koszulcone/monomial.hpp"

namespace koszulcone {

namespace {

void enumerate(std::size_t n, int remaining, std::size_t pos, std::vector<int>& current, std::vector<Monomial>& out) {
  if (pos + 1 == n) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    enumerate(n, remaining - e, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (d < 0 || n == 0) return out;
  std::vector<int> current(n, 0);
  enumerate(n, d, 0, current, out);
  return out;
}

std::string format_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    int e = m.exponents[i];
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += names.at(i);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

}  // namespace koszulcone
