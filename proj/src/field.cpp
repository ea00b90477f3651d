#include "koszulcone/field.hpp"

#include <charconv>
#include <limits>

namespace koszulcone {

bool is_prime(std::uint64_t p) noexcept {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw FieldError("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw FieldError("division by zero in " + name());
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return from_integer(t);
}

PrimeField::Element PrimeField::from_fraction(std::int64_t num, std::int64_t den) const {
  return div(from_integer(num), from_integer(den));
}

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw FieldError("malformed coefficient '" + std::string(whole) + "'");
  return value;
}

}  // namespace

PrimeField::Element PrimeField::parse(std::string_view text) const {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_integer(parse_integer(text, text));
  std::int64_t num = parse_integer(text.substr(0, slash), text);
  std::int64_t den = parse_integer(text.substr(slash + 1), text);
  if (from_integer(den) == 0) throw FieldError("denominator of '" + std::string(text) + "' vanishes mod p");
  return from_fraction(num, den);
}

RationalField::Element RationalField::from_fraction(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw FieldError("zero denominator");
  Element q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

RationalField::Element RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw FieldError("division by zero in QQ");
  return Element(1) / a;
}

std::string RationalField::format(const Element& a) const {
  if (a.get_den() == 1) return a.get_num().get_str();
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

RationalField::Element RationalField::parse(std::string_view text) const {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  auto check = [&](const std::string& part) {
    std::size_t i = (!part.empty() && part.front() == '-') ? 1 : 0;
    if (i == part.size()) throw FieldError("malformed coefficient '" + std::string(text) + "'");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw FieldError("malformed coefficient '" + std::string(text) + "'");
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    check(s);
    return Element(mpz_class(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  check(num);
  check(den);
  mpz_class d(den);
  if (d == 0) throw FieldError("zero denominator in '" + std::string(text) + "'");
  Element q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

}  // namespace koszulcone
