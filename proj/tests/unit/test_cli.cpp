#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "koszulcone/cli.hpp"
#include "koszulcone/fixtures.hpp"
#include "koszulcone/job.hpp"
#include "json.hpp"

using namespace koszulcone;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture_path(const std::string& name) { return std::string(KOSZULCONE_FIXTURE_DIR) + "/" + name + ".ring"; }

JobSpec random_job(std::mt19937_64& rng) {
  JobSpec j;
  const std::size_t n = 1 + rng() % 4;
  for (std::size_t i = 0; i < n; ++i) j.vars.push_back(std::string(1, static_cast<char>('a' + i)) + std::to_string(rng() % 3));
  j.field = rng() % 2 ? FieldSpec{true, 0} : FieldSpec{false, 101};
  auto monomial = [&](int d) {
    Monomial m = Monomial::one(n);
    for (int k = 0; k < d; ++k) ++m.exponents[rng() % n];
    return m;
  };
  for (std::size_t r = rng() % 3; r > 0; --r) {
    std::map<Monomial, mpq_class, std::greater<>> terms;
    for (std::size_t t = 1 + rng() % 3; t > 0; --t)
      terms[monomial(2)] = mpq_class(static_cast<long>(rng() % 4) + 1, 1 + static_cast<unsigned long>(rng() % 3));
    for (auto& [m, c] : terms) c.canonicalize();
    Polynomial p;
    for (const auto& [m, c] : terms) p.push_back({rng() % 2 ? c : mpq_class(-c), m});
    j.relations.push_back(p);
  }
  for (std::size_t g = 1 + rng() % 3; g > 0; --g) j.ideal.push_back(monomial(1 + static_cast<int>(rng() % 2)));
  if (rng() % 2) j.preferred.push_back(monomial(2));
  if (rng() % 2) j.hmax = 1 + static_cast<int>(rng() % 6);
  if (rng() % 2) j.dmax = 1 + static_cast<int>(rng() % 6);
  if (rng() % 2) j.seed = rng();
  if (rng() % 2) j.out = "json";
  if (rng() % 2) j.command = "betti";
  return j;
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
  try {
    parse_job("field p=101\nvars x y\nideal x*z\n", "in.ring");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 6);
    CHECK(std::string(e.what()).rfind("in.ring:3:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_job("vars x\nrel x^3\n"), ParseError);
  CHECK_THROWS_AS(parse_job("vars x\nbogus 1\n"), ParseError);
  CHECK_THROWS_AS(parse_job("field p=100\nvars x\n"), ParseError);
  CHECK_THROWS_AS(parse_job("vars x\nideal 1\n"), ParseError);
}

TEST_CASE("print and parse round trip") {
  for (const auto& fx : builtin_fixtures()) {
    auto j = parse_job(fx.text, std::string(fx.name));
    CHECK(parse_job(print_job(j)) == j);
    CHECK(print_job(parse_job(print_job(j))) == print_job(j));
  }
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto j = random_job(rng);
    auto text = print_job(j);
    auto back = parse_job(text);
    CHECK_MESSAGE(print_job(back) == text, text);
  }
}

TEST_CASE("field specs") {
  CHECK(parse_field_spec("QQ").rational);
  CHECK(parse_field_spec("q").rational);
  CHECK(parse_field_spec("7").p == 7);
  CHECK(parse_field_spec("p=32003").p == 32003);
  CHECK(format_field_spec(parse_field_spec("101")) == "p=101");
}

TEST_CASE("fixture files match the builtin copies") {
  for (const auto& fx : builtin_fixtures()) {
    std::ifstream in(fixture_path(std::string(fx.name)));
    REQUIRE_MESSAGE(in, fx.name);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == fx.text);
  }
}

TEST_CASE("documented command lines") {
  auto b = run({"betti", "--hmax", "3", fixture_path("md_squares_n3_d2")});
  CHECK(b.code == kExitPass);
  CHECK(b.out.find("total: 3 8 15") != std::string::npos);

  auto r = run({"check", "regular", fixture_path("hhr_example")});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("PASS") != std::string::npos);

  auto s = run({"check", "strongly-koszul", fixture_path("conca"), "--dmax", "3"});
  CHECK(s.code == kExitFail);
  CHECK(s.out.find("witness ({} : b) degree 2") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"betti", "no_such_fixture"}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"betti", "--bogus", "hhr_example"}).code == kExitInput);
  CHECK(run({"resolve", "md_squares_n3_d2"}).code == kExitFail);
  CHECK(run({"resolve", "--method", "cone", "md_squares_n3_d2"}).code == kExitPass);
  CHECK(run({"priddy", "builtin:hhr_example"}).code == kExitPass);
  CHECK(run({"check", "quotients", "hhr_example"}).code == kExitPass);
  CHECK(run({"check", "star", "star_counter"}).code != kExitInput);
  CHECK(run({"dual", "--field", "QQ", "conca"}).code == kExitPass);
  CHECK(run({"betti", "--field", "12", "conca"}).code == kExitInput);
}

TEST_CASE("JSON output is deterministic and parseable") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"betti", "--out", "json", "hhr_example"},
        std::vector<std::string>{"dual", "--out", "json", "conca"},
        std::vector<std::string>{"verify", "--out", "json", "poly_stable_a"}}) {
    auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK_NOTHROW((void)nlohmann::json::parse(a.out));
  }
}

TEST_CASE("exported complexes verify") {
  const std::string path = "koszulcone_unit_export.json";
  CHECK(run({"resolve", "--export", path, "hhr_example"}).code == kExitPass);
  auto v = run({"verify", "--complex", path, "hhr_example"});
  CHECK(v.code == kExitPass);
  std::remove(path.c_str());
}

TEST_CASE("selftest passes") { CHECK(run({"selftest"}).code == kExitPass); }
