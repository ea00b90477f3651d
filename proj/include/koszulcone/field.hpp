#pragma once

// Coefficient fields. Elements are plain values; all arithmetic goes through
// the field object, so a prime field carries its modulus instead of relying
// on global state.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace koszulcone {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The prime field F_p, p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;
  static constexpr bool is_rational = false;

  explicit PrimeField(std::uint32_t p = 101);

  std::uint32_t characteristic() const noexcept { return p_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1 % p_; }
  Element from_integer(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_fraction(std::int64_t num, std::int64_t den) const;

  Element add(Element a, Element b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  // a + b*c
  Element fma(Element a, Element b, Element c) const noexcept {
    return static_cast<Element>((a + static_cast<std::uint64_t>(b) * c) % p_);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const noexcept { return a == 0; }
  bool is_one(Element a) const noexcept { return a == one(); }
  bool equal(Element a, Element b) const noexcept { return a == b; }

  /// Integer in [0, p).
  std::string format(Element a) const { return std::to_string(a); }
  /// Accepts an optionally signed integer or `num/den`.
  Element parse(std::string_view text) const;

  std::string name() const { return "F_" + std::to_string(p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, backed by GMP.
class RationalField {
 public:
  using Element = mpq_class;
  static constexpr bool is_rational = true;

  std::uint32_t characteristic() const noexcept { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_integer(std::int64_t v) const { return Element(mpz_class(std::to_string(v))); }
  Element from_fraction(std::int64_t num, std::int64_t den) const;

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element fma(const Element& a, const Element& b, const Element& c) const { return a + b * c; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return a * inv(b); }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  /// `num/den` in lowest terms, or just `num` for integers.
  std::string format(const Element& a) const;
  Element parse(std::string_view text) const;

  std::string name() const { return "QQ"; }

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

bool is_prime(std::uint64_t p) noexcept;

}  // namespace koszulcone
