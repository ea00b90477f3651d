#pragma once

// JSON serialisation of complexes and Betti tables.
//
// Complex schema:
//   { "kind": "resolution" | "priddy" | "sub-priddy", "field": "F_101" | "QQ",
//     "vars": [...], "top": H,
//     "modules": [ { "degree": l, "basis": [ { "generator": i (1-based) | null,
//         "dual_index": r, "dual_degree": e, "internal_degree": d,
//         "dual": [ { "word": [1-based indices], "coefficient": c } ] } ] } ],
//     "differentials": [ { "degree": l, "rows": R, "cols": C,
//         "entries": [ { "row": r, "col": c,
//                        "coefficient": { "degree": e, "coords": [...] } } ] } ] }
// Field elements are integers mod p, or "num/den" strings over QQ.

#include <string>

#include "json.hpp"
#include "koszulcone/resolutions.hpp"

namespace koszulcone {

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
nlohmann::json element_to_json(const F& field, const typename F::Element& x);

template <class F>
typename F::Element element_from_json(const F& field, const nlohmann::json& j);

template <class F>
nlohmann::json complex_to_json(const ChainComplex<F>& c);

/// Rebuilds a complex over A; throws SchemaError on malformed input or on
/// entries that do not fit the algebra.
template <class F>
ChainComplex<F> complex_from_json(const GradedAlgebra<F>& A, const nlohmann::json& j);

nlohmann::json betti_to_json(const BettiTable& t, BettiLevel level);

}  // namespace koszulcone
