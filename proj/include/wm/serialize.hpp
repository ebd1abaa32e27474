#pragma once

#include <json.hpp>

#include "wm/morphisms.hpp"
#include "wm/ratfn.hpp"
#include "wm/wordstats.hpp"

// JSON shapes kept stable for external consumers:
//   RatFn:    {"num": [c0, c1, ...], "den": [...], "n_min": k}   (decimal strings)
//   Laurent:  {"lead_exp": e, "coeffs": ["p/q", ...]}
//   Morphism: {"rank": r, "domain": {...}, "codomain": {...}, "vertex_map": [...]}
//   Graph:    {"rank": r, "vertices": n, "edges": [[tail, head, label], ...]}

namespace wm {

nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const RatFn& f);
nlohmann::json to_json(const LaurentTail& t);
nlohmann::json to_json(const CoreGraph& g);
nlohmann::json to_json(const Morphism& m);
nlohmann::json to_json(const ExpectationReport& r);

}  // namespace wm
