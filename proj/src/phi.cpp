#include "wm/phi.hpp"

#include <algorithm>
#include <set>

#include "wm/errors.hpp"

namespace wm {

namespace {

// vertex and edge fiber sizes of eta over its codomain
struct Fibers {
  std::vector<int> vertex;  // indexed by cod vertex
  std::vector<int> edge;    // indexed by cod edge
};

Fibers fibers_of(const Morphism& eta) {
  Fibers f;
  f.vertex.assign(eta.cod.num_vertices(), 0);
  f.edge.assign(eta.cod.edges().size(), 0);
  for (int v : eta.vertex_map) ++f.vertex[v];
  for (int e : eta.edge_map) ++f.edge[e];
  return f;
}

}  // namespace

RatFn PhiContext::L(const Morphism& eta) {
  Fibers f = fibers_of(eta);
  Poly num = Poly::constant(1), den = Poly::constant(1);
  long n_min = 1;
  for (int g : f.vertex) num = num * falling_factorial(g);
  for (int g : f.edge) {
    den = den * falling_factorial(g);
    n_min = std::max(n_min, long(g));
  }
  return RatFn(std::move(num), std::move(den), n_min);
}

RatFn PhiContext::phi(const Morphism& eta) {
  Morphism onto = eta.surjective() ? eta : image_factor(eta).onto;
  std::vector<int> key = morphism_key(onto);
  auto it = phi_memo_.find(key);
  if (it != phi_memo_.end()) return it->second;

  // Sum the per-factorization lift counts over one common denominator: the
  // second leg of partition p has vertex fibers "blocks over v" and edge
  // fibers "distinct edge images over e", and its L divides out a suffix of
  // prod_e (N)_{full fiber of e}.
  const Fibers full = fibers_of(onto);
  Poly den = Poly::constant(1);
  long n_min = 1;
  for (int g : full.edge) {
    den = den * falling_factorial(g);
    n_min = std::max(n_min, long(g));
  }
  const int ncv = onto.cod.num_vertices();
  const int nce = int(onto.cod.edges().size());
  Poly num;
  std::vector<int> gv(ncv), fe(nce);
  std::vector<std::vector<char>> seen_block(ncv);
  std::vector<std::set<std::pair<int, int>>> seen_edge(nce);
  for_each_decomposition(
      onto,
      [&](const Partition& p) {
        int nb = block_count(p);
        for (int v = 0; v < ncv; ++v) {
          gv[v] = 0;
          seen_block[v].assign(nb, 0);
        }
        for (int u = 0; u < int(p.size()); ++u) {
          int v = onto.vertex_map[u];
          if (!seen_block[v][p[u]]) {
            seen_block[v][p[u]] = 1;
            ++gv[v];
          }
        }
        for (int e = 0; e < nce; ++e) seen_edge[e].clear();
        for (int i = 0; i < int(onto.dom.edges().size()); ++i) {
          const GEdge& ed = onto.dom.edges()[i];
          seen_edge[onto.edge_map[i]].insert({p[ed.tail], p[ed.head]});
        }
        Poly term = Poly::constant(1);
        for (int v = 0; v < ncv; ++v) term = term * falling_factorial(gv[v]);
        for (int e = 0; e < nce; ++e) {
          fe[e] = int(seen_edge[e].size());
          for (int i = fe[e]; i < full.edge[e]; ++i)
            term = term * (Poly::var() - Poly::constant(i));
        }
        num = num + term;
      },
      limits_);
  RatFn sum(std::move(num), std::move(den), n_min);
  phi_memo_[key] = sum;
  return sum;
}

RatFn PhiContext::R(const Morphism& eta) {
  if (!eta.surjective())
    throw internal_error("R requires a surjective morphism");
  return R_inner(eta);
}

RatFn PhiContext::R_inner(const Morphism& eta) {
  std::vector<int> key = morphism_key(eta);
  auto it = r_memo_.find(key);
  if (it != r_memo_.end()) return it->second;
  const Partition fibers = fiber_partition(eta);
  RatFn value = phi(eta);
  std::vector<Partition> proper;
  for_each_decomposition(
      eta,
      [&](const Partition& p) {
        if (p != fibers) proper.push_back(p);
      },
      limits_);
  for (const Partition& p : proper)
    value = value - R_inner(quotient_morphism(eta.dom, p));
  r_memo_[key] = value;
  return value;
}

RatFn PhiContext::C(const Morphism& eta) {
  if (!eta.surjective())
    throw internal_error("C requires a surjective morphism");
  return C_inner(eta);
}

RatFn PhiContext::C_inner(const Morphism& eta) {
  std::vector<int> key = morphism_key(eta);
  auto it = c_memo_.find(key);
  if (it != c_memo_.end()) return it->second;
  const Partition fibers = fiber_partition(eta);
  RatFn value = phi(eta);
  // chains dom ->> M1 ->> M2 ->> cod, skipping the trivial (discrete, fibers)
  std::vector<Morphism> mids;
  for (const Decomposition& outer : enumerate_decomp(eta, limits_)) {
    const bool outer_is_fibers = outer.partition == fibers;
    for_each_decomposition(
        outer.first,
        [&](const Partition& p1) {
          if (outer_is_fibers && block_count(p1) == int(p1.size())) return;
          mids.push_back(realize_decomposition(outer.first, p1).second);
        },
        limits_);
  }
  for (const Morphism& mid : mids) value = value - C_inner(mid);
  c_memo_[key] = value;
  return value;
}

RatFn PhiContext::Calg(const Morphism& eta) {
  if (!algebraic(eta))
    throw internal_error("Calg requires an algebraic morphism");
  return Calg_inner(eta);
}

RatFn PhiContext::Calg_inner(const Morphism& eta) {
  std::vector<int> key = morphism_key(eta);
  auto it = calg_memo_.find(key);
  if (it != calg_memo_.end()) return it->second;
  const Partition fibers = fiber_partition(eta);
  RatFn value = phi(eta);
  std::vector<Morphism> mids;
  for (const Decomposition& outer : enumerate_decomp(eta, limits_)) {
    const bool outer_is_fibers = outer.partition == fibers;
    if (!algebraic(outer.second)) continue;  // last leg
    for (const Decomposition& inner : enumerate_decomp(outer.first, limits_)) {
      if (outer_is_fibers &&
          block_count(inner.partition) == int(inner.partition.size()))
        continue;
      if (!algebraic(inner.first)) continue;   // first leg
      if (!algebraic(inner.second)) continue;  // middle leg
      mids.push_back(inner.second);
    }
  }
  for (const Morphism& mid : mids) value = value - Calg_inner(mid);
  calg_memo_[key] = value;
  return value;
}

bool PhiContext::algebraic(const Morphism& eta) {
  if (!eta.surjective()) return false;
  std::vector<int> key = morphism_key(eta);
  auto it = alg_memo_.find(key);
  if (it != alg_memo_.end()) return it->second;
  bool v = is_algebraic(eta);
  alg_memo_[key] = v;
  return v;
}

Int norm_count(const std::vector<int>& fiber_sizes, int j) {
  // stirling[k] = c(n, n-k) for the current fiber, convolved in
  std::vector<Int> acc = {Int(1)};
  for (int n : fiber_sizes) {
    // unsigned Stirling numbers of the first kind: prev[m] = c(n, m)
    std::vector<Int> prev(n + 1, Int(0));
    prev[0] = 1;  // c(0,0)
    for (int i = 1; i <= n; ++i) {
      std::vector<Int> cur(n + 1, Int(0));
      for (int m = 0; m <= i; ++m) {
        Int v = 0;
        if (m >= 1) v += prev[m - 1];
        v += Int(i - 1) * prev[m];
        cur[m] = v;
      }
      prev = std::move(cur);
    }
    // weight k perms of S_n have n-k cycles
    int kmax = std::min(j, n);
    std::vector<Int> weights(kmax + 1);
    for (int k = 0; k <= kmax; ++k) weights[k] = prev[n - k];
    std::vector<Int> next(std::min<std::size_t>(acc.size() + kmax, j + 1), Int(0));
    for (std::size_t a = 0; a < acc.size(); ++a)
      for (int k = 0; k <= kmax && a + k < next.size(); ++k)
        next[a + k] += acc[a] * weights[k];
    acc = std::move(next);
  }
  return j < int(acc.size()) ? acc[j] : Int(0);
}

std::vector<Rat> laurent_L_direct(const Morphism& eta, int order) {
  Fibers f = fibers_of(eta);
  std::vector<int> vf, ef;
  for (int g : f.vertex)
    if (g > 0) vf.push_back(g);
  for (int g : f.edge)
    if (g > 0) ef.push_back(g);
  // numerator and denominator series in 1/N after factoring out N^chi
  std::vector<Rat> a(order + 1), b(order + 1);
  for (int p = 0; p <= order; ++p) {
    Rat sign = (p % 2 == 0) ? Rat(1) : Rat(-1);
    a[p] = sign * Rat(norm_count(vf, p));
    b[p] = sign * Rat(norm_count(ef, p));
  }
  std::vector<Rat> out(order + 1);
  for (int p = 0; p <= order; ++p) {
    Rat acc = a[p];
    for (int j = 0; j < p; ++j) acc -= out[j] * b[p - j];
    out[p] = acc;  // b[0] == 1
  }
  return out;
}

}  // namespace wm
