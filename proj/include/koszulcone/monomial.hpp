#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace koszulcone {

/// Exponent vector of a commutative monomial x_1^{a_1} ... x_n^{a_n}.
struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}
  static Monomial one(std::size_t n) { return Monomial(std::vector<int>(n, 0)); }
  static Monomial variable(std::size_t n, std::size_t j) {
    Monomial m = one(n);
    m.exponents.at(j) = 1;
    return m;
  }

  std::size_t num_vars() const noexcept { return exponents.size(); }
  int degree() const noexcept {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exponents.size(); ++i)
      if (exponents[i] > other.exponents[i]) return false;
    return true;
  }
  /// Indices of variables with positive exponent.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      if (exponents[i] > 0) s.push_back(i);
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) m.exponents[i] += b.exponents[i];
    return m;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// All monomials of degree d in n variables, lex order with x_1 largest
/// (x_1^d first).
std::vector<Monomial> monomials_of_degree(std::size_t n, int d);

/// "x1*x3", "x3^2", or "1".
std::string format_monomial(const Monomial& m, const std::vector<std::string>& names);

}  // namespace koszulcone
