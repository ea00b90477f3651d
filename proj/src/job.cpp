#include "koszulcone/job.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace koszulcone {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

FieldSpec parse_field_spec(std::string_view text) {
  FieldSpec f;
  if (text == "q" || text == "Q" || text == "QQ") {
    f.rational = true;
    return f;
  }
  if (text.substr(0, 2) == "p=") text.remove_prefix(2);
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument("field must be p=<prime> or q");
  unsigned long long p = std::stoull(std::string(text));
  if (p < 2 || p > 0xFFFFFFFFull) throw std::invalid_argument("characteristic out of range");
  for (unsigned long long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
  f.p = static_cast<std::uint32_t>(p);
  return f;
}

std::string format_field_spec(const FieldSpec& f) { return f.rational ? "q" : "p=" + std::to_string(f.p); }

namespace {

class LineCursor {
 public:
  LineCursor(std::string_view text, const std::string& source, std::size_t line, std::size_t offset)
      : text_(text), source_(source), line_(line), offset_(offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(source_, line_, offset_ + pos_ + 1, message);
  }
  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool at_name() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::size_t column() const { return offset_ + pos_ + 1; }

 private:
  std::string_view text_;
  const std::string& source_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::size_t var_index(LineCursor& cur, const std::vector<std::string>& vars) {
  const std::string name = cur.identifier();
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) cur.fail("unknown variable \"" + name + "\"");
  return static_cast<std::size_t>(it - vars.begin());
}

// factor ('*' factor)*, starting at a name
Monomial parse_monomial_factors(LineCursor& cur, const std::vector<std::string>& vars) {
  Monomial m = Monomial::one(vars.size());
  while (true) {
    std::size_t v = var_index(cur, vars);
    int e = 1;
    if (cur.accept('^')) {
      std::string d = cur.digits();
      if (d.size() > 6) cur.fail("exponent too large");
      e = std::stoi(d);
      if (e == 0) cur.fail("exponent must be positive");
    }
    m.exponents[v] += e;
    if (!cur.accept('*')) break;
    if (!cur.at_name()) cur.fail("expected a variable after '*'");
  }
  return m;
}

mpq_class parse_coefficient(LineCursor& cur) {
  std::string num = cur.digits();
  std::string den = "1";
  if (cur.accept('/')) {
    den = cur.digits();
    if (std::all_of(den.begin(), den.end(), [](char c) { return c == '0'; })) cur.fail("zero denominator");
  }
  mpq_class q(num + "/" + den);
  q.canonicalize();
  return q;
}

Polynomial parse_polynomial(LineCursor& cur, const std::vector<std::string>& vars) {
  std::map<Monomial, mpq_class> acc;
  bool first = true;
  while (true) {
    int sign = 1;
    if (cur.accept('-'))
      sign = -1;
    else if (!first && !cur.accept('+'))
      cur.fail("expected '+' or '-'");
    else if (first)
      cur.accept('+');
    mpq_class c = 1;
    Monomial m = Monomial::one(vars.size());
    if (cur.at_digit()) {
      c = parse_coefficient(cur);
      if (cur.accept('*')) m = parse_monomial_factors(cur, vars);
    } else if (cur.at_name()) {
      m = parse_monomial_factors(cur, vars);
    } else {
      cur.fail("expected a term");
    }
    acc[m] += sign * c;
    first = false;
    if (cur.at_end()) break;
  }
  Polynomial p;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (sgn(it->second) != 0) p.push_back({it->second, it->first});
  return p;
}

std::vector<Monomial> parse_monomial_list(LineCursor& cur, const std::vector<std::string>& vars) {
  std::vector<Monomial> out;
  if (cur.at_end()) cur.fail("expected at least one monomial");
  while (true) {
    if (cur.at_digit()) {
      std::string d = cur.digits();
      if (d != "1") cur.fail("monomials take no coefficient");
      if (cur.accept('*'))
        out.push_back(parse_monomial_factors(cur, vars));
      else
        out.push_back(Monomial::one(vars.size()));
    } else {
      out.push_back(parse_monomial_factors(cur, vars));
    }
    if (cur.at_end()) break;
    if (!cur.accept(',')) cur.fail("expected ','");
  }
  return out;
}

int parse_positive(LineCursor& cur, const char* what) {
  std::string d = cur.digits();
  if (d.size() > 4 || std::stoi(d) <= 0) cur.fail(std::string(what) + " must be a positive integer below 10000");
  int v = std::stoi(d);
  if (!cur.at_end()) cur.fail("unexpected text after number");
  return v;
}

}  // namespace

JobSpec parse_job(std::string_view text, const std::string& source) {
  JobSpec job;
  bool have_field = false, have_vars = false, have_ideal = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    const std::size_t line_start = start;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineCursor cur(line, source, line_no, 0);
    (void)line_start;
    if (cur.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string key = cur.identifier();
    auto need_vars = [&]() {
      if (!have_vars) cur.fail("'" + key + "' before 'vars'");
    };
    if (key == "field") {
      if (have_field) cur.fail("duplicate 'field' line");
      std::string spec;
      if (cur.at_name()) {
        spec = cur.identifier();
        if (spec == "p") {
          if (!cur.accept('=')) cur.fail("expected '=' after p");
          spec = "p=" + cur.digits();
        }
      } else {
        spec = cur.digits();
      }
      if (!cur.at_end()) cur.fail("unexpected text after field");
      try {
        job.field = parse_field_spec(spec);
      } catch (const std::invalid_argument& e) {
        cur.fail(e.what());
      }
      have_field = true;
    } else if (key == "vars") {
      if (have_vars) cur.fail("duplicate 'vars' line");
      while (!cur.at_end()) {
        std::string v = cur.identifier();
        if (std::find(job.vars.begin(), job.vars.end(), v) != job.vars.end()) cur.fail("duplicate variable " + v);
        job.vars.push_back(v);
        cur.accept(',');
      }
      if (job.vars.empty()) cur.fail("no variables");
      have_vars = true;
    } else if (key == "rel") {
      need_vars();
      Polynomial p = parse_polynomial(cur, job.vars);
      if (p.empty()) cur.fail("relation is zero");
      for (const auto& t : p)
        if (t.monomial.degree() != 2) cur.fail("relations must be homogeneous quadrics");
      job.relations.push_back(std::move(p));
    } else if (key == "prefer") {
      need_vars();
      for (auto& m : parse_monomial_list(cur, job.vars)) job.preferred.push_back(std::move(m));
    } else if (key == "ideal") {
      need_vars();
      if (have_ideal) cur.fail("duplicate 'ideal' line");
      job.ideal = parse_monomial_list(cur, job.vars);
      for (const auto& m : job.ideal)
        if (m.degree() == 0) cur.fail("the unit ideal is not allowed");
      have_ideal = true;
    } else if (key == "hmax") {
      job.hmax = parse_positive(cur, "hmax");
    } else if (key == "dmax") {
      job.dmax = parse_positive(cur, "dmax");
    } else if (key == "seed") {
      std::string d = cur.digits();
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), seed);
      if (ec != std::errc() || ptr != d.data() + d.size()) cur.fail("seed must be an unsigned 64-bit integer");
      job.seed = seed;
      if (!cur.at_end()) cur.fail("unexpected text after seed");
    } else if (key == "out") {
      std::string o = cur.identifier();
      if (o != "json" && o != "text") cur.fail("out must be json or text");
      job.out = o;
      if (!cur.at_end()) cur.fail("unexpected text after out");
    } else if (key == "command") {
      std::string c = cur.identifier();
      while (cur.accept('-')) c += "-" + cur.identifier();
      while (!cur.at_end()) {
        std::string more = cur.identifier();
        while (cur.accept('-')) more += "-" + cur.identifier();
        c += " " + more;
      }
      job.command = c;
    } else {
      throw ParseError(source, line_no, 1, "unknown directive '" + key + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_vars) throw ParseError(source, line_no, 1, "missing 'vars' line");
  return job;
}

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpq_class c = p[i].coefficient;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    const bool unit_mono = p[i].monomial.degree() == 0;
    if (c != 1 || unit_mono) {
      s += c.get_str();
      if (!unit_mono) s += "*";
    }
    if (!unit_mono) s += format_monomial(p[i].monomial, vars);
  }
  return s;
}

std::string print_job(const JobSpec& job) {
  std::ostringstream os;
  os << "field " << format_field_spec(job.field) << "\n";
  os << "vars";
  for (const auto& v : job.vars) os << ' ' << v;
  os << "\n";
  for (const auto& r : job.relations) os << "rel " << format_polynomial(r, job.vars) << "\n";
  auto list = [&](const char* key, const std::vector<Monomial>& ms) {
    if (ms.empty()) return;
    os << key << ' ';
    for (std::size_t i = 0; i < ms.size(); ++i) os << (i ? ", " : "") << format_monomial(ms[i], job.vars);
    os << "\n";
  };
  list("prefer", job.preferred);
  list("ideal", job.ideal);
  if (job.hmax) os << "hmax " << *job.hmax << "\n";
  if (job.dmax) os << "dmax " << *job.dmax << "\n";
  if (job.seed) os << "seed " << *job.seed << "\n";
  if (job.out) os << "out " << *job.out << "\n";
  if (!job.command.empty()) os << "command " << job.command << "\n";
  return os.str();
}

template <class F>
RingPresentation<F> make_presentation(const JobSpec& job, const F& field) {
  RingPresentation<F> pres;
  pres.field = field;
  pres.var_names = job.vars;
  for (const auto& rel : job.relations) {
    FreePolynomial<F> p;
    for (const auto& t : rel) {
      auto c = field.parse(t.coefficient.get_str());
      if (!field.is_zero(c)) p[t.monomial] = field.add(p.count(t.monomial) ? p[t.monomial] : field.zero(), c);
    }
    if (!p.empty()) pres.relations.push_back(std::move(p));
  }
  pres.preferred = job.preferred;
  pres.validate();
  return pres;
}

template RingPresentation<PrimeField> make_presentation<PrimeField>(const JobSpec&, const PrimeField&);
template RingPresentation<RationalField> make_presentation<RationalField>(const JobSpec&, const RationalField&);

}  // namespace koszulcone
