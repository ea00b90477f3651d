#include "koszulcone/export.hpp"

namespace koszulcone {

using nlohmann::json;

template <class F>
json element_to_json(const F& field, const typename F::Element& x) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    (void)field;
    return x;
  } else {
    return field.format(x);
  }
}

template <class F>
typename F::Element element_from_json(const F& field, const json& j) {
  if (j.is_number_integer()) return field.from_integer(j.get<std::int64_t>());
  if (j.is_string()) return field.parse(j.get<std::string>());
  throw SchemaError("field element must be an integer or a string, got " + j.dump());
}

namespace {

std::vector<std::size_t> word_of(std::size_t index, std::size_t n, int l) {
  std::vector<std::size_t> w(static_cast<std::size_t>(l));
  for (int i = l - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = index % n;
    index /= n;
  }
  return w;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace

template <class F>
json complex_to_json(const ChainComplex<F>& c) {
  const auto& A = *c.algebra;
  const F& k = A.field();
  const std::size_t n = A.num_vars();
  json out;
  out["kind"] = to_string(c.kind);
  out["field"] = k.name();
  out["vars"] = A.var_names();
  out["top"] = c.top();
  json modules = json::array();
  for (int l = 0; l <= c.top(); ++l) {
    json basis = json::array();
    for (const auto& e : c.modules[static_cast<std::size_t>(l)]) {
      json dual = json::array();
      for (std::size_t i = 0; i < e.dual.size(); ++i) {
        if (k.is_zero(e.dual[i])) continue;
        json word = json::array();
        for (std::size_t w : word_of(i, n, e.dual_degree)) word.push_back(w + 1);
        dual.push_back({{"word", word}, {"coefficient", element_to_json(k, e.dual[i])}});
      }
      basis.push_back({{"generator", e.generator == kNoGenerator ? json(nullptr) : json(e.generator + 1)},
                       {"dual_index", e.dual_index},
                       {"dual_degree", e.dual_degree},
                       {"internal_degree", e.internal_degree},
                       {"dual", dual}});
    }
    modules.push_back({{"degree", l}, {"basis", basis}});
  }
  out["modules"] = modules;
  json diffs = json::array();
  for (int l = 1; l <= c.top(); ++l) {
    const auto& P = c.differentials[static_cast<std::size_t>(l)];
    json entries = json::array();
    for (std::size_t r = 0; r < P.rows; ++r)
      for (std::size_t col = 0; col < P.cols; ++col) {
        const auto& e = P.at(r, col);
        if (e.coords.empty() || A.is_zero(e)) continue;
        json coords = json::array();
        for (const auto& x : e.coords) coords.push_back(element_to_json(k, x));
        entries.push_back({{"row", r}, {"col", col}, {"coefficient", {{"degree", e.degree}, {"coords", coords}}}});
      }
    diffs.push_back({{"degree", l}, {"rows", P.rows}, {"cols", P.cols}, {"entries", entries}});
  }
  out["differentials"] = diffs;
  return out;
}

template <class F>
ChainComplex<F> complex_from_json(const GradedAlgebra<F>& A, const json& j) {
  const F& k = A.field();
  const std::size_t n = A.num_vars();
  try {
    ChainComplex<F> c;
    c.algebra = &A;
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "resolution")
      c.kind = ComplexKind::Resolution;
    else if (kind == "priddy")
      c.kind = ComplexKind::Priddy;
    else if (kind == "sub-priddy")
      c.kind = ComplexKind::SubPriddy;
    else
      throw SchemaError("unknown complex kind \"" + kind + "\"");
    if (require(j, "field").get<std::string>() != k.name())
      throw SchemaError("complex is over " + j.at("field").get<std::string>() + ", ring is over " + k.name());
    if (require(j, "vars").get<std::vector<std::string>>() != A.var_names())
      throw SchemaError("variable names differ from the ring");
    for (const auto& m : require(j, "modules")) {
      std::vector<BasisElement<F>> mod;
      for (const auto& b : require(m, "basis")) {
        BasisElement<F> e;
        const auto& g = require(b, "generator");
        e.generator = g.is_null() ? kNoGenerator : g.get<std::size_t>() - 1;
        e.dual_index = require(b, "dual_index").get<std::size_t>();
        e.dual_degree = require(b, "dual_degree").get<int>();
        e.internal_degree = require(b, "internal_degree").get<int>();
        if (e.dual_degree < 0) throw SchemaError("negative dual degree");
        e.dual = zero_vector(k, tensor_dim(n, e.dual_degree));
        for (const auto& t : require(b, "dual")) {
          std::size_t idx = 0;
          const auto& word = require(t, "word");
          if (word.size() != static_cast<std::size_t>(e.dual_degree)) throw SchemaError("dual word of wrong length");
          for (const auto& w : word) {
            const auto v = w.get<std::size_t>();
            if (v < 1 || v > n) throw SchemaError("dual word index out of range");
            idx = idx * n + (v - 1);
          }
          e.dual[idx] = element_from_json(k, require(t, "coefficient"));
        }
        mod.push_back(std::move(e));
      }
      c.modules.push_back(std::move(mod));
    }
    if (c.modules.empty()) throw SchemaError("complex has no modules");
    c.differentials.emplace_back();
    const auto& diffs = require(j, "differentials");
    if (diffs.size() + 1 != c.modules.size()) throw SchemaError("differential count does not match module count");
    for (int l = 1; l <= c.top(); ++l) {
      const auto& d = diffs.at(static_cast<std::size_t>(l - 1));
      const auto& rows = c.modules[static_cast<std::size_t>(l - 1)];
      const auto& cols = c.modules[static_cast<std::size_t>(l)];
      if (require(d, "rows").get<std::size_t>() != rows.size() || require(d, "cols").get<std::size_t>() != cols.size())
        throw SchemaError("differential " + std::to_string(l) + " has the wrong shape");
      PolyMatrix<F> P = zero_poly_matrix(A, rows, cols);
      for (const auto& e : require(d, "entries")) {
        const auto r = require(e, "row").get<std::size_t>();
        const auto col = require(e, "col").get<std::size_t>();
        if (r >= rows.size() || col >= cols.size()) throw SchemaError("entry position out of range");
        const auto& coef = require(e, "coefficient");
        auto& target = P.at(r, col);
        if (require(coef, "degree").get<int>() != target.degree)
          throw SchemaError("entry (" + std::to_string(r) + ", " + std::to_string(col) + ") is not homogeneous");
        const auto& coords = require(coef, "coords");
        if (coords.size() != target.coords.size()) throw SchemaError("entry coordinate count mismatch");
        for (std::size_t i = 0; i < coords.size(); ++i) target.coords[i] = element_from_json(k, coords[i]);
      }
      c.differentials.push_back(std::move(P));
    }
    return c;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed complex: ") + e.what());
  }
}

json betti_to_json(const BettiTable& t, BettiLevel level) {
  json out;
  out["level"] = level == BettiLevel::Ideal ? "ideal" : "quotient";
  out["regularity"] = t.regularity;
  out["linear"] = t.linear;
  out["hmax"] = level == BettiLevel::Ideal ? t.hmax - 1 : t.hmax;
  json entries = json::array();
  for (const auto& [key, v] : t.entries) {
    if (v == 0) continue;
    int l = key.first;
    if (level == BettiLevel::Ideal) {
      if (l == 0) continue;
      l -= 1;
    }
    entries.push_back({{"homological_degree", l}, {"internal_degree", key.second}, {"count", v}});
  }
  out["entries"] = entries;
  json totals = json::array();
  for (int l = level == BettiLevel::Ideal ? 1 : 0; l <= t.hmax; ++l) totals.push_back(t.total(l));
  out["totals"] = totals;
  return out;
}

#define KOSZULCONE_INSTANTIATE_EXPORT(F)                                                     \
  template json element_to_json<F>(const F&, const F::Element&);                             \
  template F::Element element_from_json<F>(const F&, const json&);                           \
  template json complex_to_json<F>(const ChainComplex<F>&);                                  \
  template ChainComplex<F> complex_from_json<F>(const GradedAlgebra<F>&, const json&);

KOSZULCONE_INSTANTIATE_EXPORT(PrimeField)
KOSZULCONE_INSTANTIATE_EXPORT(RationalField)

}  // namespace koszulcone
