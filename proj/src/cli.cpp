#include "koszulcone/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "koszulcone/export.hpp"
#include "koszulcone/fixtures.hpp"
#include "koszulcone/job.hpp"
#include "koszulcone/monomial_ideals.hpp"
#include "koszulcone/quadratic_dual.hpp"
#include "koszulcone/resolutions.hpp"

namespace koszulcone {

using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::optional<int> hmax;
  std::optional<int> dmax;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> field;
  std::optional<std::string> out;
  // resolve / verify
  std::string method = "closed";
  bool literal_inner_sum = false;
  std::string export_path;
  std::string complex_path;
  std::optional<int> window;
  // check regular
  bool literal_condition1 = false;
  bool literal_condition2b = false;
  // betti
  std::string level = "ideal";
};

std::string read_input(const std::string& name, std::string& source) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) {
    std::ifstream in(name);
    if (!in) throw InputError("cannot read " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    source = name;
    return ss.str();
  }
  std::string key = name;
  if (key.rfind("builtin:", 0) == 0) key = key.substr(8);
  key = fs::path(key).filename().string();
  if (key.size() > 5 && key.substr(key.size() - 5) == ".ring") key = key.substr(0, key.size() - 5);
  if (auto t = builtin_fixture(key)) {
    source = "builtin:" + key;
    return std::string(*t);
  }
  throw InputError("no such file or builtin fixture: " + name);
}

std::string names_of(const IndexSet& E, const std::vector<std::string>& vars) {
  std::string s = "{";
  bool first = true;
  for (auto i : E) {
    s += (first ? "" : ",") + vars[i];
    first = false;
  }
  return s + "}";
}

json index_set_json(const IndexSet& E) {
  json a = json::array();
  for (auto i : E) a.push_back(i + 1);
  return a;
}

json homology_json(const VerifyReport& v) {
  json h = json::array();
  for (const auto& [key, dim] : v.homology)
    h.push_back({{"homological_degree", key.first}, {"internal_degree", key.second}, {"dim", dim}});
  return h;
}

json verify_json(const VerifyReport& v) {
  return {{"d2_zero", v.d2_zero},   {"d2_witness", v.d2_witness}, {"minimal", v.minimal},
          {"minimal_witness", v.minimal_witness}, {"checked_degree", v.checked_degree},
          {"nonzero_homology", homology_json(v)}, {"passed", v.passed()}};
}

void print_verify(std::ostream& os, const VerifyReport& v, bool require_minimal) {
  os << "d^2 = 0: " << (v.d2_zero ? "yes" : "NO (" + v.d2_witness + ")") << "\n";
  os << "minimal: " << (v.minimal ? "yes" : "no (" + v.minimal_witness + ")") << "\n";
  if (v.homology.empty()) {
    os << "homology: zero in positive degrees through internal degree " << v.checked_degree << "\n";
  } else {
    os << "homology: nonzero\n";
    for (const auto& [key, dim] : v.homology)
      os << "  H_" << key.first << " in degree " << key.second << ": dim " << dim << "\n";
  }
  (void)require_minimal;
}

template <class F>
std::string format_tensor(const F& field, const Vector<F>& v, std::size_t n, int l) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (field.is_zero(v[i])) continue;
    std::string word;
    std::size_t idx = i;
    std::vector<std::size_t> w(static_cast<std::size_t>(l));
    for (int p = l - 1; p >= 0; --p) {
      w[static_cast<std::size_t>(p)] = idx % n + 1;
      idx /= n;
    }
    for (std::size_t p = 0; p < w.size(); ++p) word += (p ? "," : "") + std::to_string(w[p]);
    if (!s.empty()) s += " + ";
    s += field.format(v[i]) + "*e[" + word + "]";
  }
  return s.empty() ? "0" : s;
}

// Strongly stable closure of random monomials, minimal generators in
// degree-then-lex order.
std::vector<Monomial> random_stable_ideal(std::mt19937_64& rng, std::size_t n, int max_deg) {
  std::uniform_int_distribution<int> deg_dist(1, max_deg);
  std::uniform_int_distribution<int> count_dist(1, 3);
  std::set<Monomial> gens;
  const int count = count_dist(rng);
  for (int c = 0; c < count; ++c) {
    const int d = deg_dist(rng);
    auto all = monomials_of_degree(n, d);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::vector<Monomial> todo{all[pick(rng)]};
    while (!todo.empty()) {
      Monomial m = todo.back();
      todo.pop_back();
      if (!gens.insert(m).second) continue;
      for (std::size_t j = 1; j < n; ++j)
        if (m.exponents[j] > 0)
          for (std::size_t i = 0; i < j; ++i) {
            Monomial b = m;
            --b.exponents[j];
            ++b.exponents[i];
            todo.push_back(b);
          }
    }
  }
  std::vector<Monomial> minimal;
  for (const auto& m : gens) {
    bool redundant = false;
    for (const auto& g : gens)
      if (!(g == m) && g.divides(m)) redundant = true;
    if (!redundant) minimal.push_back(m);
  }
  std::sort(minimal.begin(), minimal.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return b < a;
  });
  return minimal;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

template <class F>
class Runner {
 public:
  Runner(const Options& opt, JobSpec job, F field, std::ostream& out)
      : opt_(opt), job_(std::move(job)), field_(std::move(field)), out_(out) {
    H_ = opt.hmax.value_or(job_.hmax.value_or(4));
    if (H_ < 1) throw InputError("--hmax must be positive");
    dcheck_ = opt.dmax.value_or(job_.dmax.value_or(4));
    dverify_ = opt.dmax.value_or(job_.dmax.value_or(8));
    if (dcheck_ < 1) throw InputError("--dmax must be positive");
    json_ = opt.out.value_or(job_.out.value_or("text")) == "json";
    int maxgen = 1;
    for (const auto& m : job_.ideal) maxgen = std::max(maxgen, m.degree());
    const int cutoff = std::max({maxgen + H_ + 1, dverify_, dcheck_ + maxgen + 1, 3});
    A_ = std::make_unique<GradedAlgebra<F>>(make_presentation(job_, field_), cutoff);
  }

  int run() {
    const std::string& c = opt_.command;
    if (c == "dual") return dual();
    if (c == "priddy") return priddy();
    if (c == "check quotients") return check_quotients();
    if (c == "check regular") return check_regular();
    if (c == "check strongly-koszul") return check_strongly_koszul_cmd();
    if (c == "check star") return check_star();
    if (c == "resolve") return resolve();
    if (c == "betti") return betti();
    if (c == "verify") return verify();
    throw InputError("unknown command " + c);
  }

 private:
  const QuadraticDual<F>& dual_space(int degree) {
    degree = std::max(degree, 3);
    if (!dual_ || dual_->max_degree() < degree) dual_ = std::make_unique<QuadraticDual<F>>(*A_, degree);
    return *dual_;
  }
  const MonomialIdeal<F>& ideal() {
    if (job_.ideal.empty()) throw InputError("the input has no 'ideal' line");
    if (!J_) J_ = std::make_unique<MonomialIdeal<F>>(*A_, job_.ideal);
    return *J_;
  }
  const DecompositionTable<F>& table() {
    if (!T_) T_ = std::make_unique<DecompositionTable<F>>(ideal());
    return *T_;
  }
  void emit(const json& j) { out_ << j.dump(2) << "\n"; }
  const std::vector<std::string>& vars() const { return A_->var_names(); }
  std::string gen_name(std::size_t i) { return format_monomial(ideal().generator(i), vars()); }

  int dual() {
    const auto& D = dual_space(H_);
    json comps = json::array();
    for (int l = 0; l <= H_; ++l) {
      const auto& B = D.component(l).basis();
      json basis = json::array();
      if (json_) {
        for (std::size_t r = 0; r < B.rows(); ++r) {
          json v = json::array();
          for (const auto& x : B.row_vector(r)) v.push_back(element_to_json(field_, x));
          basis.push_back(v);
        }
        comps.push_back({{"degree", l}, {"dim", B.rows()}, {"basis", basis}});
      } else {
        out_ << "(A^!_" << l << ")^*: dim " << B.rows() << "\n";
        for (std::size_t r = 0; r < B.rows(); ++r)
          out_ << "  " << format_tensor(field_, B.row_vector(r), A_->num_vars(), l) << "\n";
      }
    }
    if (json_) emit({{"command", "dual"}, {"action_side", D.action_side() == ActionSide::First ? "first" : "last"},
                     {"components", comps}});
    return kExitPass;
  }

  int priddy() {
    const auto& D = dual_space(H_);
    auto P = priddy_complex(*A_, D, H_);
    auto rep = verify_complex(P, VerifyOptions{dverify_, std::nullopt});
    if (json_) {
      json ranks = json::array();
      for (int l = 0; l <= H_; ++l) ranks.push_back(P.rank(l));
      emit({{"command", "priddy"}, {"hmax", H_}, {"ranks", ranks}, {"verify", verify_json(rep)},
            {"koszul_certificate", rep.passed()}});
    } else {
      out_ << "ranks:";
      for (int l = 0; l <= H_; ++l) out_ << ' ' << P.rank(l);
      out_ << "\n";
      print_verify(out_, rep, true);
      out_ << (rep.passed() ? "PASS" : "FAIL") << " Koszulness certificate through homological degree " << H_ - 1
           << ", internal degree " << rep.checked_degree << "\n";
    }
    return rep.passed() ? kExitPass : kExitFail;
  }

  int check_quotients() {
    auto rep = check_linear_quotients(ideal(), dcheck_);
    if (json_) {
      json colons = json::array();
      for (std::size_t i = 0; i < rep.colons.size(); ++i) {
        const auto& c = rep.colons[i];
        colons.push_back({{"generator", gen_name(i)}, {"vars", index_set_json(c.vars)}, {"linear_dim", c.linear_dim},
                          {"checked_to", c.checked_to},
                          {"fails_at", c.fails_at ? json(*c.fails_at) : json(nullptr)}, {"passed", c.passed()}});
      }
      emit({{"command", "check quotients"}, {"passed", rep.passed}, {"colons", colons}});
    } else {
      for (std::size_t i = 0; i < rep.colons.size(); ++i) {
        const auto& c = rep.colons[i];
        out_ << "E_" << i + 1 << " (" << gen_name(i) << "): " << names_of(c.vars, vars());
        if (!c.coordinate()) out_ << "  linear part of dim " << c.linear_dim << " is not spanned by variables";
        if (c.fails_at) out_ << "  extra generator in degree " << *c.fails_at;
        out_ << "\n";
      }
      out_ << (rep.passed ? "PASS" : "FAIL") << " linear quotients (checked to degree " << dcheck_ << ")\n";
    }
    return rep.passed ? kExitPass : kExitFail;
  }

  int check_regular() {
    RegularOrderingOptions o{dcheck_, opt_.literal_condition1, opt_.literal_condition2b};
    const auto& D = dual_space(std::max(H_, dcheck_));
    auto rep = check_regular_ordering(ideal(), table(), D, o);
    if (json_) {
      json viol = json::array();
      for (const auto& v : rep.violations) viol.push_back({{"condition", v.condition}, {"witness", v.witness}});
      emit({{"command", "check regular"}, {"passed", rep.passed}, {"checked_to", rep.checked_to},
            {"literal_condition1", rep.literal_condition1}, {"literal_condition2b", rep.literal_condition2b},
            {"violations", viol}, {"reading_disagreements", rep.reading_disagreements}});
    } else {
      for (const auto& v : rep.violations) out_ << "condition " << v.condition << ": " << v.witness << "\n";
      for (const auto& d : rep.reading_disagreements) out_ << "readings disagree: " << d << "\n";
      out_ << (rep.passed ? "PASS" : "FAIL") << " regular ordering (checked to degree " << rep.checked_to << ")\n";
    }
    return rep.passed ? kExitPass : kExitFail;
  }

  int check_strongly_koszul_cmd() {
    auto rep = check_strongly_koszul(*A_, dcheck_);
    if (json_) {
      json fails = json::array();
      for (const auto& f : rep.failures)
        fails.push_back({{"Y", index_set_json(f.Y)}, {"x", f.x + 1}, {"degree", f.degree}});
      emit({{"command", "check strongly-koszul"}, {"passed", rep.passed}, {"checked_to", rep.checked_to},
            {"pairs_checked", rep.pairs_checked}, {"exhaustive", rep.exhaustive}, {"failures", fails}});
    } else {
      for (const auto& f : rep.failures)
        out_ << "witness (" << names_of(f.Y, vars()) << " : " << vars()[f.x] << ") degree " << f.degree << "\n";
      out_ << (rep.passed ? "PASS" : "FAIL") << " strongly Koszul in the given variables (" << rep.pairs_checked
           << " pairs, checked to degree " << rep.checked_to << (rep.exhaustive ? "" : ", subsets bounded") << ")\n";
    }
    return rep.passed ? kExitPass : kExitFail;
  }

  int check_star() {
    auto lq = check_linear_quotients(ideal(), dcheck_);
    if (!lq.passed) {
      out_ << "FAIL linear quotients\n";
      return kExitFail;
    }
    StarReport rep;
    try {
      rep = check_star_condition(ideal(), lq);
    } catch (const NotMultigraded& e) {
      throw InputError(e.what());
    }
    if (json_) {
      emit({{"command", "check star"}, {"relation_support", index_set_json(rep.relation_support)},
            {"star_holds", rep.star_holds}, {"regular_decomposition", rep.regular_decomposition},
            {"guaranteed", rep.guaranteed()}, {"witnesses", rep.witnesses}});
    } else {
      out_ << "support of relations: " << names_of(rep.relation_support, vars()) << "\n";
      for (const auto& w : rep.witnesses) out_ << "  " << w << "\n";
      out_ << (rep.guaranteed() ? "PASS" : "FAIL") << " star condition with regular decomposition\n";
    }
    return rep.guaranteed() ? kExitPass : kExitFail;
  }

  ChainComplex<F> build(const ResolutionSetup<F>& setup, std::vector<std::string>* projections) {
    if (opt_.method == "cone") return iterated_mapping_cone(setup);
    if (opt_.method != "closed") throw InputError("--method must be cone or closed");
    ClosedFormOptions o;
    o.literal_inner_sum = opt_.literal_inner_sum;
    o.regular = RegularOrderingOptions{dcheck_, opt_.literal_condition1, opt_.literal_condition2b};
    auto res = closed_form_resolution(setup, table(), o);
    if (projections) *projections = res.projections;
    return std::move(res.complex);
  }

  int resolve() {
    const auto& D = dual_space(std::max(H_, dcheck_));
    ResolutionSetup<F> setup(ideal(), D, H_, dcheck_);
    std::vector<std::string> projections;
    auto C = build(setup, &projections);
    auto rep = verify_complex(C, VerifyOptions{dverify_, std::nullopt});
    const json cj = complex_to_json(C);
    if (!opt_.export_path.empty()) {
      std::ofstream f(opt_.export_path);
      if (!f) throw InputError("cannot write " + opt_.export_path);
      f << cj.dump(2) << "\n";
    }
    if (json_) {
      emit({{"command", "resolve"}, {"method", opt_.method}, {"complex", cj}, {"verify", verify_json(rep)},
            {"projected_terms", projections.size()}});
    } else {
      out_ << "method: " << opt_.method << (opt_.literal_inner_sum ? " (inner sum j <= k)" : "") << "\n";
      out_ << "ranks:";
      for (int l = 0; l <= C.top(); ++l) out_ << ' ' << C.rank(l);
      out_ << "\n" << format_betti(betti_from_complex(C), BettiLevel::Quotient);
      if (!projections.empty()) out_ << projections.size() << " contraction terms projected onto (B^j)^*\n";
      print_verify(out_, rep, true);
      out_ << (rep.passed() ? "PASS" : "FAIL") << " minimal free resolution of A/J through homological degree "
           << H_ - 1 << "\n";
    }
    return rep.passed() ? kExitPass : kExitFail;
  }

  int betti() {
    const auto& D = dual_space(H_);
    ResolutionSetup<F> setup(ideal(), D, H_ + 1, dcheck_);
    auto t = betti_table(setup);
    const BettiLevel level = opt_.level == "quotient" ? BettiLevel::Quotient : BettiLevel::Ideal;
    if (opt_.level != "quotient" && opt_.level != "ideal") throw InputError("--level must be ideal or quotient");
    // ideal level shows homological degrees 0..H
    if (level == BettiLevel::Quotient) {
      t.hmax = H_;
      for (auto it = t.entries.begin(); it != t.entries.end();)
        it = it->first.first > H_ ? t.entries.erase(it) : std::next(it);
    }
    if (json_)
      emit({{"command", "betti"}, {"table", betti_to_json(t, level)}});
    else
      out_ << format_betti(t, level) << "regularity: " << t.regularity << (t.linear ? " (linear)" : "") << "\n";
    return kExitPass;
  }

  int verify() {
    ChainComplex<F> C;
    std::unique_ptr<ResolutionSetup<F>> setup;
    if (!opt_.complex_path.empty()) {
      std::ifstream f(opt_.complex_path);
      if (!f) throw InputError("cannot read " + opt_.complex_path);
      json j;
      try {
        f >> j;
      } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
      }
      if (j.contains("complex")) j = j.at("complex");
      C = complex_from_json(*A_, j);
    } else {
      const auto& D = dual_space(std::max(H_, dcheck_));
      setup = std::make_unique<ResolutionSetup<F>>(ideal(), D, H_, dcheck_);
      C = build(*setup, nullptr);
    }
    auto rep = verify_complex(C, VerifyOptions{dverify_, opt_.window});
    if (json_) {
      emit({{"command", "verify"}, {"kind", to_string(C.kind)}, {"verify", verify_json(rep)}});
    } else {
      print_verify(out_, rep, true);
      out_ << (rep.passed() ? "PASS" : "FAIL") << " " << to_string(C.kind) << " complex\n";
    }
    return rep.passed() ? kExitPass : kExitFail;
  }

  const Options& opt_;
  JobSpec job_;
  F field_;
  std::ostream& out_;
  int H_ = 4;
  int dcheck_ = 4;
  int dverify_ = 8;
  bool json_ = false;
  std::unique_ptr<GradedAlgebra<F>> A_;
  std::unique_ptr<QuadraticDual<F>> dual_;
  std::unique_ptr<MonomialIdeal<F>> J_;
  std::unique_ptr<DecompositionTable<F>> T_;
};

struct SelftestResult {
  std::string name;
  bool passed;
  std::string detail;
};

using P = PrimeField;

JobSpec fixture_job(const char* name) { return parse_job(*builtin_fixture(name), std::string("builtin:") + name); }

SelftestResult selftest_resolution(const std::string& name, const JobSpec& job, int H) {
  P field(job.field.p);
  int maxgen = 1;
  for (const auto& m : job.ideal) maxgen = std::max(maxgen, m.degree());
  GradedAlgebra<P> A(make_presentation(job, field), std::max(maxgen + H + 1, 8));
  QuadraticDual<P> D(A, std::max(H, 4));
  MonomialIdeal<P> J(A, job.ideal);
  DecompositionTable<P> T(J);
  ResolutionSetup<P> S(J, D, H, 4);
  auto cone = iterated_mapping_cone(S);
  auto vc = verify_complex(cone, VerifyOptions{8, std::nullopt});
  if (!vc.passed()) return {name, false, "mapping cone fails verification"};
  auto reg = check_regular_ordering(J, T, D, RegularOrderingOptions{});
  if (reg.passed) {
    auto cf = closed_form_resolution(S, T);
    auto v = verify_complex(cf.complex, VerifyOptions{8, std::nullopt});
    if (!v.passed()) return {name, false, "closed form fails verification"};
    if (betti_from_complex(cf.complex).entries != betti_from_complex(cone).entries)
      return {name, false, "closed form and cone ranks differ"};
  }
  if (betti_from_complex(cone).entries != betti_table(S).entries) return {name, false, "Betti table disagrees"};
  return {name, true, reg.passed ? "cone and closed form agree" : "cone verified (ordering not regular)"};
}

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
  std::vector<SelftestResult> results;
  auto guard = [&](const std::string& name, auto&& fn) {
    try {
      results.push_back(fn());
    } catch (const std::exception& e) {
      results.push_back({name, false, e.what()});
    }
  };
  guard("md_squares_n3_d2 betti", [&]() -> SelftestResult {
    auto job = fixture_job("md_squares_n3_d2");
    P field(job.field.p);
    GradedAlgebra<P> A(make_presentation(job, field), 8);
    QuadraticDual<P> D(A, 4);
    MonomialIdeal<P> J(A, job.ideal);
    ResolutionSetup<P> S(J, D, 4, 4);
    auto t = betti_table(S);
    const bool ok = t.ideal_at(0, 2) == 3 && t.ideal_at(1, 3) == 8 && t.ideal_at(2, 4) == 15;
    return {"md_squares_n3_d2 betti", ok, "ideal-level 3, 8, 15 expected"};
  });
  guard("conca strongly-koszul", [&]() -> SelftestResult {
    auto job = fixture_job("conca");
    P field(job.field.p);
    GradedAlgebra<P> A(make_presentation(job, field), 5);
    auto rep = check_strongly_koszul(A, 3);
    bool witness = false;
    for (const auto& f : rep.failures)
      if (f.Y.empty() && f.x == 1 && f.degree == 2) witness = true;
    return {"conca strongly-koszul", !rep.passed && witness, "expected failure with witness ({} : b) degree 2"};
  });
  guard("hhr_example regular", [&]() -> SelftestResult {
    auto job = fixture_job("hhr_example");
    P field(job.field.p);
    GradedAlgebra<P> A(make_presentation(job, field), 7);
    QuadraticDual<P> D(A, 4);
    MonomialIdeal<P> J(A, job.ideal);
    DecompositionTable<P> T(J);
    auto rep = check_regular_ordering(J, T, D, RegularOrderingOptions{});
    return {"hhr_example regular", rep.passed, "regular ordering expected"};
  });
  for (const char* name : {"hhr_example", "poly_m2_n3", "poly_stable_a", "poly_stable_b", "poly_mixed",
                           "mixed_degree", "md_squares_n3_d2", "star_counter"}) {
    guard(std::string(name) + " resolution", [&]() { return selftest_resolution(std::string(name) + " resolution", fixture_job(name), 4); });
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
    auto gens = random_stable_ideal(rng, n, 3);
    JobSpec job;
    for (std::size_t i = 0; i < n; ++i) job.vars.push_back("x" + std::to_string(i + 1));
    job.ideal = gens;
    std::string label = "random stable ideal (";
    for (std::size_t i = 0; i < gens.size(); ++i) label += (i ? ", " : "") + format_monomial(gens[i], job.vars);
    label += ")";
    guard(label, [&]() -> SelftestResult {
      auto r = selftest_resolution(label, job, 4);
      if (!r.passed) return r;
      // Eliahou-Kervaire count: |E_i| = max(m_i) - 1.
      P field(101);
      GradedAlgebra<P> A(make_presentation(job, field), 8);
      QuadraticDual<P> D(A, 4);
      MonomialIdeal<P> J(A, job.ideal);
      ResolutionSetup<P> S(J, D, 4, 4);
      auto t = betti_table(S);
      for (int l = 1; l <= 4; ++l) {
        std::size_t expect = 0;
        for (const auto& g : gens) expect += binomial(g.support().back(), static_cast<std::size_t>(l - 1));
        if (t.total(l) != expect) return {label, false, "total Betti number differs from the stable-ideal count"};
      }
      return {label, true, "matches the stable-ideal count"};
    });
  }
  return results;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolutions of monomial ideals over Koszul algebras", "koszulcone"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("input", opt.input, "ring file or builtin fixture name")->required();
    sub->add_option("--hmax", opt.hmax, "homological cutoff H");
    sub->add_option("--dmax", opt.dmax, "internal-degree cutoff D");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--field", opt.field, "p=<prime> or q");
    sub->add_option("--out", opt.out, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* dual = app.add_subcommand("dual", "dimensions and bases of (A^!_l)^*");
  add_common(dual, true);
  auto* priddy = app.add_subcommand("priddy", "bounded Koszulness certificate from the Priddy complex");
  add_common(priddy, true);
  auto* check = app.add_subcommand("check", "bounded structural checks");
  check->require_subcommand(1);
  auto* cq = check->add_subcommand("quotients", "linear quotients by variables");
  add_common(cq, true);
  auto* cr = check->add_subcommand("regular", "regular ordering conditions");
  add_common(cr, true);
  cr->add_flag("--literal-condition1", opt.literal_condition1, "read condition (1) with m_j^*(x_s m_j)");
  cr->add_flag("--literal-condition2b", opt.literal_condition2b, "apply condition (2b) to every s");
  auto* cs = check->add_subcommand("strongly-koszul", "colons of variable ideals by variables");
  add_common(cs, true);
  auto* cst = check->add_subcommand("star", "star condition for monomial relations");
  add_common(cst, true);
  auto* resolve = app.add_subcommand("resolve", "build and verify the resolution of A/J");
  add_common(resolve, true);
  auto method_check = CLI::IsMember({"cone", "closed"});
  resolve->add_option("--method", opt.method, "cone or closed")->check(method_check);
  resolve->add_flag("--literal-inner-sum", opt.literal_inner_sum, "closed form with the inner sum over j <= k");
  resolve->add_option("--export", opt.export_path, "write the complex as JSON");
  auto* betti = app.add_subcommand("betti", "graded Betti numbers");
  add_common(betti, true);
  betti->add_option("--level", opt.level, "ideal or quotient")->check(CLI::IsMember({"ideal", "quotient"}));
  auto* verify = app.add_subcommand("verify", "verify an exported or freshly built complex");
  add_common(verify, true);
  verify->add_option("--complex", opt.complex_path, "exported complex JSON");
  verify->add_option("--method", opt.method, "cone or closed")->check(method_check);
  verify->add_option("--window", opt.window, "only internal degrees i+w and i+w+1");
  auto* selftest = app.add_subcommand("selftest", "fixture suite");
  add_common(selftest, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (selftest->parsed()) {
      const std::uint64_t seed = opt.seed.value_or(1);
      auto results = run_selftest(seed);
      bool all = true;
      json arr = json::array();
      for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      }
      if (opt.out.value_or("text") == "json") {
        out << json{{"command", "selftest"}, {"seed", seed}, {"passed", all}, {"results", arr}}.dump(2) << "\n";
      } else {
        for (const auto& r : results)
          out << (r.passed ? "PASS " : "FAIL ") << r.name << (r.passed ? "" : ": " + r.detail) << "\n";
      }
      return all ? kExitPass : kExitFail;
    }
    for (auto* s : app.get_subcommands()) {
      opt.command = s->get_name();
      for (auto* t : s->get_subcommands()) opt.command += " " + t->get_name();
    }
    std::string source;
    std::string text = read_input(opt.input, source);
    JobSpec job = parse_job(text, source);
    FieldSpec fs = job.field;
    if (opt.field) {
      try {
        fs = parse_field_spec(*opt.field);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--field: ") + e.what());
      }
    }
    if (fs.rational) {
      Runner<RationalField> r(opt, job, RationalField{}, out);
      return r.run();
    }
    Runner<PrimeField> r(opt, job, PrimeField(fs.p), out);
    return r.run();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidPresentation& e) {
    err << "invalid presentation: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidIdeal& e) {
    err << "invalid ideal: " << e.what() << "\n";
    return kExitInput;
  } catch (const SchemaError& e) {
    err << "invalid complex: " << e.what() << "\n";
    return kExitInput;
  } catch (const AmbientTooLarge& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DegreeOverflow& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NotLinearQuotients& e) {
    out << "FAIL " << e.what() << "\n";
    return kExitFail;
  } catch (const NotRegular& e) {
    out << "FAIL " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    out << "FAIL " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace koszulcone
