#include "wm/morphisms.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "wm/errors.hpp"

namespace wm {

Morphism make_morphism(const CoreGraph& dom, const CoreGraph& cod,
                       std::vector<int> vertex_map) {
  if (int(vertex_map.size()) != dom.num_vertices())
    throw internal_error("vertex map size mismatch");
  if (dom.rank() != cod.rank()) throw internal_error("rank mismatch");
  Morphism m;
  m.dom = dom;
  m.cod = cod;
  m.vertex_map = std::move(vertex_map);
  m.edge_map.resize(dom.edges().size());
  std::vector<char> vhit(cod.num_vertices(), 0), ehit(cod.edges().size(), 0);
  for (int v : m.vertex_map) {
    if (v < 0 || v >= cod.num_vertices())
      throw internal_error("vertex map image out of range");
    vhit[v] = 1;
  }
  for (int i = 0; i < int(dom.edges().size()); ++i) {
    const GEdge& e = dom.edges()[i];
    int t = m.vertex_map[e.tail], h = m.vertex_map[e.head];
    if (cod.out(t, e.label) != h)
      throw internal_error("vertex map does not commute with labels");
    m.edge_map[i] = cod.edge_out(t, e.label);
    ehit[m.edge_map[i]] = 1;
  }
  m.vertex_surjective =
      std::all_of(vhit.begin(), vhit.end(), [](char c) { return c; });
  m.edge_surjective =
      std::all_of(ehit.begin(), ehit.end(), [](char c) { return c; });
  std::vector<int> sorted = m.vertex_map;
  std::sort(sorted.begin(), sorted.end());
  m.injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  return m;
}

Morphism identity_morphism(const CoreGraph& g) {
  std::vector<int> id(g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) id[i] = i;
  return make_morphism(g, g, std::move(id));
}

Morphism compose(const Morphism& second, const Morphism& first) {
  if (!(first.cod == second.dom))
    throw internal_error("composition mismatch");
  std::vector<int> vm(first.dom.num_vertices());
  for (int v = 0; v < first.dom.num_vertices(); ++v)
    vm[v] = second.vertex_map[first.vertex_map[v]];
  return make_morphism(first.dom, second.cod, std::move(vm));
}

ImageFactorization image_factor(const Morphism& eta) {
  const CoreGraph& cod = eta.cod;
  std::vector<int> vsel(cod.num_vertices(), -1);
  std::vector<int> esel(cod.edges().size(), -1);
  for (int v : eta.vertex_map)
    if (vsel[v] == -1) vsel[v] = 0;
  for (int e : eta.edge_map)
    if (esel[e] == -1) esel[e] = 0;
  int nv = 0;
  for (int v = 0; v < cod.num_vertices(); ++v)
    if (vsel[v] == 0) vsel[v] = nv++;
  std::vector<GEdge> edges;
  std::vector<int> include_vmap;  // image vertex -> cod vertex
  include_vmap.resize(nv);
  for (int v = 0; v < cod.num_vertices(); ++v)
    if (vsel[v] >= 0) include_vmap[vsel[v]] = v;
  for (int i = 0; i < int(cod.edges().size()); ++i)
    if (esel[i] == 0) {
      const GEdge& e = cod.edges()[i];
      edges.push_back({vsel[e.tail], vsel[e.head], e.label});
    }
  CoreGraph image(cod.rank(), nv, std::move(edges), true);
  ImageFactorization out;
  std::vector<int> onto_map(eta.vertex_map.size());
  for (std::size_t v = 0; v < eta.vertex_map.size(); ++v)
    onto_map[v] = vsel[eta.vertex_map[v]];
  out.image = image;
  out.onto = make_morphism(eta.dom, image, std::move(onto_map));
  out.include = make_morphism(image, cod, std::move(include_vmap));
  if (!out.onto.surjective()) throw internal_error("image factor not onto");
  return out;
}

Pullback pullback(const Morphism& eta1, const Morphism& eta2) {
  if (!(eta1.cod == eta2.cod)) throw internal_error("pullback codomain mismatch");
  const CoreGraph &g1 = eta1.dom, &g2 = eta2.dom;
  std::vector<std::pair<int, int>> verts;
  std::map<std::pair<int, int>, int> vid;
  for (int a = 0; a < g1.num_vertices(); ++a)
    for (int b = 0; b < g2.num_vertices(); ++b)
      if (eta1.vertex_map[a] == eta2.vertex_map[b]) {
        vid[{a, b}] = int(verts.size());
        verts.push_back({a, b});
      }
  std::vector<GEdge> edges;
  for (int i = 0; i < int(verts.size()); ++i) {
    auto [a, b] = verts[i];
    for (int l = 0; l < g1.rank(); ++l) {
      int na = g1.out(a, l), nb = g2.out(b, l);
      if (na == -1 || nb == -1) continue;
      auto it = vid.find({na, nb});
      if (it == vid.end()) throw internal_error("pullback pair escaped");
      edges.push_back({i, it->second, l});
    }
  }
  CoreGraph product(g1.rank(), int(verts.size()), std::move(edges), true);
  PruneResult pr = prune(product);
  std::vector<int> p1(pr.graph.num_vertices()), p2(pr.graph.num_vertices());
  for (int i = 0; i < int(verts.size()); ++i)
    if (pr.vertex_map[i] != -1) {
      p1[pr.vertex_map[i]] = verts[i].first;
      p2[pr.vertex_map[i]] = verts[i].second;
    }
  Pullback out;
  out.graph = pr.graph;
  out.proj1 = make_morphism(pr.graph, g1, std::move(p1));
  out.proj2 = make_morphism(pr.graph, g2, std::move(p2));
  return out;
}

int block_count(const Partition& p) {
  int m = -1;
  for (int b : p) m = std::max(m, b);
  return m + 1;
}

Partition to_restricted_growth(std::vector<int> blocks) {
  std::map<int, int> rename;
  for (int& b : blocks) {
    auto [it, fresh] = rename.insert({b, int(rename.size())});
    (void)fresh;
    b = it->second;
  }
  return blocks;
}

Partition fiber_partition(const Morphism& eta) {
  return to_restricted_growth(eta.vertex_map);
}

Morphism quotient_morphism(const CoreGraph& g, const Partition& p) {
  if (int(p.size()) != g.num_vertices())
    throw internal_error("partition size mismatch");
  Partition rg = to_restricted_growth(p);
  GraphDraft d;
  d.rank = g.rank();
  d.num_vertices = block_count(rg);
  for (const GEdge& e : g.edges()) d.edges.push_back({rg[e.tail], rg[e.head], e.label});
  FoldResult f = fold(d);
  std::vector<int> vm(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) vm[v] = f.vertex_map[rg[v]];
  return make_morphism(g, f.graph, std::move(vm));
}

namespace {

// Same-label edge pair whose block relations must stay consistent: gluing
// the tails without gluing the heads (or vice versa) would force a fold.
struct PairCheck {
  int t1, h1, t2, h2;
};

struct DecompEnum {
  const Morphism& eta;
  int n;
  std::vector<int> fiber;                     // vertex -> cod vertex
  std::vector<std::vector<PairCheck>> at;     // keyed by the last endpoint
  std::vector<int> block;                     // assignment being built
  std::vector<int> block_fiber;
  const std::function<void(const Partition&)>& fn;
  std::uint64_t count = 0;

  DecompEnum(const Morphism& e, const std::function<void(const Partition&)>& f)
      : eta(e), n(e.dom.num_vertices()), fn(f) {
    fiber = e.vertex_map;
    at.resize(n);
    const auto& edges = e.dom.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (edges[i].label != edges[j].label) continue;
        PairCheck pc{edges[i].tail, edges[i].head, edges[j].tail, edges[j].head};
        int trig = std::max({pc.t1, pc.h1, pc.t2, pc.h2});
        at[trig].push_back(pc);
      }
    block.assign(n, -1);
  }

  bool ok(int v) const {
    for (const PairCheck& pc : at[v]) {
      bool tails = block[pc.t1] == block[pc.t2];
      bool heads = block[pc.h1] == block[pc.h2];
      if (tails != heads) return false;
    }
    return true;
  }

  void rec(int v) {
    if (v == n) {
      ++count;
      if (fn) fn(block);
      return;
    }
    for (int b = 0; b < int(block_fiber.size()); ++b) {
      if (block_fiber[b] != fiber[v]) continue;
      block[v] = b;
      if (ok(v)) rec(v + 1);
    }
    block[v] = int(block_fiber.size());
    block_fiber.push_back(fiber[v]);
    if (ok(v)) rec(v + 1);
    block_fiber.pop_back();
    block[v] = -1;
  }
};

}  // namespace

std::uint64_t for_each_decomposition(
    const Morphism& eta, const std::function<void(const Partition&)>& fn,
    const EnumLimits& limits) {
  if (!eta.surjective())
    throw internal_error("decompositions require a surjective morphism");
  if (eta.dom.num_vertices() > limits.max_partition_vertices)
    throw budget_error("partition enumeration exceeds max_partition_vertices");
  if (eta.dom.num_vertices() == 0) {
    if (fn) fn({});
    return 1;
  }
  DecompEnum e(eta, fn);
  e.rec(0);
  return e.count;
}

Decomposition realize_decomposition(const Morphism& eta, const Partition& p) {
  Decomposition d;
  d.partition = p;
  d.first = quotient_morphism(eta.dom, p);
  if (d.first.cod.num_vertices() != block_count(d.partition))
    throw internal_error("valid partition folded unexpectedly");
  std::vector<int> mid_map(d.first.cod.num_vertices(), -1);
  for (int v = 0; v < eta.dom.num_vertices(); ++v)
    mid_map[d.first.vertex_map[v]] = eta.vertex_map[v];
  d.second = make_morphism(d.first.cod, eta.cod, std::move(mid_map));
  return d;
}

std::vector<Decomposition> enumerate_decomp(const Morphism& eta,
                                            const EnumLimits& limits) {
  std::vector<Decomposition> out;
  for_each_decomposition(
      eta, [&](const Partition& p) { out.push_back(realize_decomposition(eta, p)); },
      limits);
  return out;
}

std::vector<Decomposition3> enumerate_decomp3(const Morphism& eta,
                                              const EnumLimits& limits) {
  std::vector<Decomposition3> out;
  for (const Decomposition& outer : enumerate_decomp(eta, limits)) {
    // outer.first: dom ->> M2,  outer.second: M2 ->> cod.  Chains arise from
    // factoring outer.first once more.
    for (const Decomposition& inner : enumerate_decomp(outer.first, limits)) {
      Decomposition3 d3;
      d3.p1 = inner.partition;
      d3.p2 = outer.partition;
      d3.first = inner.first;
      d3.mid = inner.second;
      d3.last = outer.second;
      out.push_back(std::move(d3));
    }
  }
  return out;
}

std::optional<int> b_norm(const Morphism& eta, std::optional<int> max_depth) {
  if (!eta.surjective())
    throw internal_error("merge distance requires a surjective morphism");
  const int n = eta.dom.num_vertices();
  Partition start(n);
  for (int i = 0; i < n; ++i) start[i] = i;
  Partition goal = fiber_partition(eta);
  if (start == goal) return 0;
  std::map<Partition, int> dist;
  std::queue<Partition> q;
  dist[start] = 0;
  q.push(start);
  while (!q.empty()) {
    Partition cur = q.front();
    q.pop();
    int d = dist[cur];
    if (max_depth && d >= *max_depth) continue;
    int nb = block_count(cur);
    // fiber of each block under eta (blocks always refine eta's fibers)
    std::vector<int> bf(nb, -1);
    for (int v = 0; v < n; ++v) bf[cur[v]] = eta.vertex_map[v];
    for (int i = 0; i < nb; ++i)
      for (int j = i + 1; j < nb; ++j) {
        if (bf[i] != bf[j]) continue;
        Partition merged = cur;
        for (int& b : merged)
          if (b == j) b = i;
        // fold closure: the actual fibers of the glued-and-folded quotient
        Morphism qm = quotient_morphism(eta.dom, merged);
        Partition next = fiber_partition(qm);
        if (next == goal) return d + 1;
        auto [it, fresh] = dist.insert({next, d + 1});
        if (fresh) q.push(it->first);
      }
  }
  if (max_depth) return std::nullopt;
  throw internal_error("merge-distance search exhausted without reaching goal");
}

int norm(const Morphism& eta) {
  ImageFactorization f = image_factor(eta);
  std::optional<int> b = b_norm(f.onto, std::nullopt);
  GraphInvariants gi = graph_invariants(f.image);
  GraphInvariants gc = graph_invariants(eta.cod);
  return *b + (gi.euler - gc.euler);
}

bool is_free(const Morphism& eta) {
  ImageFactorization f = image_factor(eta);
  int chi_dom = graph_invariants(eta.dom).euler;
  int chi_img = graph_invariants(f.image).euler;
  int target = chi_dom - chi_img;
  if (target < 0) return false;
  // the merge distance is never below chi(dom) - chi(image), so reaching
  // the goal within `target` steps pins it exactly
  return b_norm(f.onto, target).has_value();
}

bool is_algebraic(const Morphism& eta, AlgMemo* memo);

bool AlgMemo::algebraic(const Morphism& eta) {
  std::vector<int> key = morphism_key(eta);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool v = is_algebraic(eta, this);
  memo_[key] = v;
  return v;
}

bool is_algebraic(const Morphism& eta, AlgMemo* memo) {
  if (!eta.surjective()) return false;
  if (eta.injective) return true;  // isomorphism
  const Partition fibers = fiber_partition(eta);
  bool ok = true;
  for_each_decomposition(eta, [&](const Partition& p) {
    if (!ok || p == fibers) return;
    Decomposition d = realize_decomposition(eta, p);
    if (is_free(d.second)) ok = false;
  });
  (void)memo;
  return ok;
}

bool is_algebraic(const Morphism& eta) { return is_algebraic(eta, nullptr); }

AlgFreeFactorization alg_free_factor(const Morphism& eta,
                                     const EnumLimits& limits) {
  ImageFactorization f = image_factor(eta);
  std::optional<AlgFreeFactorization> best;
  for (const Decomposition& d : enumerate_decomp(f.onto, limits)) {
    Morphism tail = compose(f.include, d.second);
    if (!is_free(tail)) continue;
    int chi = graph_invariants(d.first.cod).euler;
    if (!best || chi > best->mid_euler) {
      best = AlgFreeFactorization{d.first, tail, chi};
    }
  }
  if (!best) throw internal_error("no free tail found (fiber leg is always free)");
  return *best;
}

CriticalScan chi_max_and_crit(const Morphism& eta, bool require_negative,
                              const EnumLimits& limits, AlgMemo* memo) {
  if (!eta.surjective())
    throw internal_error("critical scan requires a surjective morphism");
  AlgMemo local;
  if (!memo) memo = &local;
  // bucket candidate factorizations by mid-graph Euler characteristic
  std::map<int, std::vector<Partition>, std::greater<int>> by_chi;
  const int ne = int(eta.dom.edges().size());
  for_each_decomposition(
      eta,
      [&](const Partition& p) {
        int nb = block_count(p);
        if (nb == int(p.size())) return;  // discrete: first leg is an iso
        // the quotient needs no folding, so edge count is determined by
        // endpoint blocks; count distinct images cheaply
        std::set<std::tuple<int, int, int>> eimg;
        for (const GEdge& e : eta.dom.edges())
          eimg.insert({p[e.tail], p[e.head], e.label});
        int chi = nb - int(eimg.size());
        (void)ne;
        if (require_negative && chi >= 0) return;
        by_chi[chi].push_back(p);
      },
      limits);
  CriticalScan scan;
  for (auto& [chi, parts] : by_chi) {
    std::vector<Decomposition> hits;
    for (const Partition& p : parts) {
      Decomposition d = realize_decomposition(eta, p);
      if (memo->algebraic(d.first)) hits.push_back(std::move(d));
    }
    if (!hits.empty()) {
      scan.any = true;
      scan.chi_max = chi;
      scan.critical = std::move(hits);
      break;
    }
  }
  return scan;
}

std::vector<int> morphism_key(const Morphism& eta) {
  std::vector<int> colors = eta.vertex_map;
  return canonical_code(eta.dom, &colors);
}

// ---------------------------------------------------------------------------
// Unit-move search: independent reconstruction of norm().

namespace {

struct MoveState {
  CoreGraph graph;
  std::vector<int> map;  // original domain vertex -> current graph vertex
};

// Does an isomorphism cur -> target commute with the two maps from the
// original domain?  Folded determinism makes the check a propagation.
bool commutes(const MoveState& st, const CoreGraph& target,
              const std::vector<int>& target_map) {
  const CoreGraph& g = st.graph;
  if (g.num_vertices() != target.num_vertices() ||
      g.edges().size() != target.edges().size())
    return false;
  std::vector<int> iso(g.num_vertices(), -1);
  std::queue<int> q;
  for (std::size_t v = 0; v < st.map.size(); ++v) {
    int a = st.map[v], b = target_map[v];
    if (iso[a] == -1) {
      iso[a] = b;
      q.push(a);
    } else if (iso[a] != b) {
      return false;
    }
  }
  while (!q.empty()) {
    int a = q.front();
    q.pop();
    for (int l = 0; l < g.rank(); ++l) {
      auto follow = [&](int na, int nb) {
        if (na == -1 && nb == -1) return true;
        if (na == -1 || nb == -1) return false;
        if (iso[na] == -1) {
          iso[na] = nb;
          q.push(na);
        }
        return iso[na] == nb;
      };
      if (!follow(g.out(a, l), target.out(iso[a], l))) return false;
      if (!follow(g.in(a, l), target.in(iso[a], l))) return false;
    }
  }
  std::vector<char> hit(target.num_vertices(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (iso[v] == -1) return false;  // not even reachable: different shape
    if (hit[iso[v]]) return false;
    hit[iso[v]] = 1;
  }
  for (const GEdge& e : g.edges())
    if (target.out(iso[e.tail], e.label) != iso[e.head]) return false;
  return true;
}

// Dedup key where the original-domain fibers keep their identity (colors
// are not renumbered): states with permuted fibers must stay distinct.
std::vector<int> state_key(const MoveState& st, int dom_vertices) {
  std::vector<int> color(st.graph.num_vertices(), -1);
  for (int v = 0; v < dom_vertices; ++v) {
    int& c = color[st.map[v]];
    if (c == -1 || v < c) c = v;  // fiber tagged by smallest domain vertex
  }
  return canonical_code(st.graph, &color);
}

std::vector<std::vector<Letter>> words_up_to(int rank, int maxlen) {
  std::vector<std::vector<Letter>> out;
  std::vector<Letter> alphabet;
  for (int g = 0; g < rank; ++g) {
    alphabet.emplace_back(g, +1);
    alphabet.emplace_back(g, -1);
  }
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) out.push_back(cur);
    if (int(cur.size()) == maxlen) return;
    for (const Letter& l : alphabet) {
      if (!cur.empty() && l == cur.back().inverse()) continue;
      cur.push_back(l);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace

std::optional<int> norm_by_moves(const Morphism& eta,
                                 const MoveSearchBudget& budget) {
  if (eta.dom.num_vertices() == 0)
    return std::nullopt;  // nothing to build from; convention handled by norm()
  const int rank = eta.dom.rank();
  const auto words = words_up_to(rank, budget.max_word_len);
  std::uint64_t states_used = 0;
  bool exhausted = false;

  MoveState start{eta.dom, {}};
  start.map.resize(eta.dom.num_vertices());
  for (int i = 0; i < eta.dom.num_vertices(); ++i) start.map[i] = i;

  auto expand = [&](const MoveState& st, const std::function<void(MoveState)>& emit) {
    GraphInvariants inv = graph_invariants(st.graph);
    // attach a cycle spelling a word at a vertex
    for (int v = 0; v < st.graph.num_vertices(); ++v)
      for (const auto& w : words) {
        GraphDraft d;
        d.rank = rank;
        d.num_vertices = st.graph.num_vertices();
        d.edges = st.graph.edges();
        d.add_path(v, w, v);
        FoldResult f = fold(d);
        MoveState next;
        next.graph = f.graph;
        next.map.resize(st.map.size());
        for (std::size_t i = 0; i < st.map.size(); ++i)
          next.map[i] = f.vertex_map[st.map[i]];
        emit(std::move(next));
      }
    // join two components by a path spelling a word (possibly empty)
    for (int v1 = 0; v1 < st.graph.num_vertices(); ++v1)
      for (int v2 = 0; v2 < st.graph.num_vertices(); ++v2) {
        if (inv.component_of_vertex[v1] == inv.component_of_vertex[v2]) continue;
        {
          // empty word: glue the two vertices outright
          Partition p(st.graph.num_vertices());
          for (int i = 0; i < st.graph.num_vertices(); ++i) p[i] = i;
          p[std::max(v1, v2)] = std::min(v1, v2);
          Morphism qm = quotient_morphism(st.graph, p);
          MoveState next;
          next.graph = qm.cod;
          next.map.resize(st.map.size());
          for (std::size_t i = 0; i < st.map.size(); ++i)
            next.map[i] = qm.vertex_map[st.map[i]];
          emit(std::move(next));
        }
        for (const auto& w : words) {
          GraphDraft d;
          d.rank = rank;
          d.num_vertices = st.graph.num_vertices();
          d.edges = st.graph.edges();
          d.add_path(v1, w, v2);
          FoldResult f = fold(d);
          MoveState next;
          next.graph = f.graph;
          next.map.resize(st.map.size());
          for (std::size_t i = 0; i < st.map.size(); ++i)
            next.map[i] = f.vertex_map[st.map[i]];
          emit(std::move(next));
        }
      }
  };

  for (int depth = 0; depth <= budget.max_depth; ++depth) {
    // iterative deepening; visited map per iteration keyed by state
    std::map<std::vector<int>, int> seen;
    bool found = false;
    auto dfs = [&](auto&& self, const MoveState& st, int used) -> void {
      if (found || exhausted) return;
      if (commutes(st, eta.cod, eta.vertex_map)) {
        found = true;
        return;
      }
      if (used == depth) return;
      if (++states_used > budget.max_states) {
        exhausted = true;
        return;
      }
      expand(st, [&](MoveState next) {
        if (found || exhausted) return;
        std::vector<int> key = state_key(next, int(eta.vertex_map.size()));
        auto it = seen.find(key);
        if (it != seen.end() && it->second <= used + 1) return;
        seen[key] = used + 1;
        self(self, next, used + 1);
      });
    };
    dfs(dfs, start, 0);
    if (found) return depth;
    if (exhausted) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace wm
