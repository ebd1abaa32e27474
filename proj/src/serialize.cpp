#include "wm/serialize.hpp"

#include <sstream>

namespace wm {

namespace {

std::string dec(const Int& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string dec(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

nlohmann::json coeff_list(const Poly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& c : p.c) a.push_back(dec(c));
  return a;
}

}  // namespace

nlohmann::json to_json(const Poly& p) { return coeff_list(p); }

nlohmann::json to_json(const RatFn& f) {
  return {{"num", coeff_list(f.num())},
          {"den", coeff_list(f.den())},
          {"n_min", f.n_min()},
          {"text", to_string(f)}};
}

nlohmann::json to_json(const LaurentTail& t) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Rat& c : t.coeffs) coeffs.push_back(dec(c));
  return {{"lead_exp", t.lead_exp}, {"coeffs", coeffs}};
}

nlohmann::json to_json(const CoreGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const GEdge& e : g.edges())
    edges.push_back({e.tail, e.head, e.label});
  return {{"rank", g.rank()},
          {"vertices", g.num_vertices()},
          {"edges", edges}};
}

nlohmann::json to_json(const Morphism& m) {
  return {{"rank", m.dom.rank()},
          {"domain", to_json(m.dom)},
          {"codomain", to_json(m.cod)},
          {"vertex_map", m.vertex_map}};
}

nlohmann::json to_json(const ExpectationReport& r) {
  nlohmann::json j;
  j["word"] = print_word(r.word);
  j["alpha"] = r.alpha;
  j["root"] = print_word(r.root);
  j["root_exponent"] = r.root_exponent;
  j["root_alpha"] = r.root_alpha;
  j["value"] = to_json(r.value);
  j["e_unif"] = dec(r.e_unif);
  j["c_const"] = dec(r.c_const);
  if (r.pi)
    j["pi"] = *r.pi;
  else
    j["pi"] = "infinity";
  j["crit_count"] = r.crit_count;
  return j;
}

}  // namespace wm
