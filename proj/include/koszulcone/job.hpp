#pragma once

// Ring files and the job description built from them.
//
//   # comment
//   field p=101            (or: field q)
//   vars x1 x2 x3
//   rel x1*x3              one homogeneous quadric per line
//   rel x3^2 - 2*x1*x2
//   prefer x1*x2, x2*x3    optional
//   ideal x1*x2, x2*x3     ordered generators
//
// Optional directives hmax, dmax, seed, out and command set defaults that
// command-line flags override.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "koszulcone/graded_algebra.hpp"
#include "koszulcone/monomial.hpp"

namespace koszulcone {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct FieldSpec {
  bool rational = false;
  std::uint32_t p = 101;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// "p=101", "101", "q" or "QQ".
FieldSpec parse_field_spec(std::string_view text);
std::string format_field_spec(const FieldSpec& f);

struct Term {
  mpq_class coefficient;
  Monomial monomial;
  friend bool operator==(const Term& a, const Term& b) {
    return a.coefficient == b.coefficient && a.monomial == b.monomial;
  }
};

using Polynomial = std::vector<Term>;

struct JobSpec {
  FieldSpec field;
  std::vector<std::string> vars;
  std::vector<Polynomial> relations;
  std::vector<Monomial> preferred;
  std::vector<Monomial> ideal;
  std::string command;
  std::optional<int> hmax;
  std::optional<int> dmax;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

JobSpec parse_job(std::string_view text, const std::string& source = "<input>");

/// Canonical text; parse_job(print_job(j)) == j.
std::string print_job(const JobSpec& job);

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

template <class F>
RingPresentation<F> make_presentation(const JobSpec& job, const F& field);

}  // namespace koszulcone
