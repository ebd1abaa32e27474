#include "wm/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "wm/errors.hpp"

namespace wm {

void GraphDraft::add_edge(int tail, int head, int label) {
  if (tail < 0 || tail >= num_vertices || head < 0 || head >= num_vertices ||
      label < 0 || label >= rank)
    throw internal_error("draft edge out of range");
  edges.push_back({tail, head, label});
}

int GraphDraft::add_path(int from, const std::vector<Letter>& ls, int to) {
  if (ls.empty()) {
    if (to >= 0) throw internal_error("empty path cannot join two vertices");
    return from;
  }
  int cur = from;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    int next = (i + 1 == ls.size() && to >= 0) ? to : add_vertex();
    if (ls[i].sign > 0)
      add_edge(cur, next, ls[i].gen);
    else
      add_edge(next, cur, ls[i].gen);
    cur = next;
  }
  return cur;
}

CoreGraph::CoreGraph(int rank, int num_vertices, std::vector<GEdge> edges,
                     bool allow_low_degree)
    : rank_(rank), nv_(num_vertices), edges_(std::move(edges)) {
  if (rank_ < 0) throw internal_error("negative rank");
  out_.assign(std::size_t(nv_) * rank_, -1);
  in_.assign(std::size_t(nv_) * rank_, -1);
  eout_.assign(std::size_t(nv_) * rank_, -1);
  ein_.assign(std::size_t(nv_) * rank_, -1);
  for (int i = 0; i < int(edges_.size()); ++i) {
    const GEdge& e = edges_[i];
    if (e.tail < 0 || e.tail >= nv_ || e.head < 0 || e.head >= nv_ ||
        e.label < 0 || e.label >= rank_)
      throw internal_error("edge out of range");
    if (out_[idx(e.tail, e.label)] != -1 || in_[idx(e.head, e.label)] != -1)
      throw internal_error("graph is not folded");
    out_[idx(e.tail, e.label)] = e.head;
    eout_[idx(e.tail, e.label)] = i;
    in_[idx(e.head, e.label)] = e.tail;
    ein_[idx(e.head, e.label)] = i;
  }
  if (!allow_low_degree)
    for (int v = 0; v < nv_; ++v)
      if (degree(v) < 2)
        throw internal_error("vertex of degree < 2 in core graph");
}

int CoreGraph::degree(int v) const {
  int d = 0;
  for (int l = 0; l < rank_; ++l) {
    if (out(v, l) != -1) ++d;
    if (in(v, l) != -1) ++d;
  }
  return d;  // a loop contributes to both counts, hence twice
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};
}  // namespace

FoldResult fold(const GraphDraft& draft) {
  UnionFind uf(draft.num_vertices);
  std::vector<GEdge> edges = draft.edges;
  // Fixpoint: normalize endpoints, dedupe, merge the endpoints of any two
  // same-label edges sharing a tail or a head.  Order cannot matter: the
  // result is the quotient by the closure of all forced identifications.
  bool changed = true;
  while (changed) {
    changed = false;
    for (GEdge& e : edges) {
      e.tail = uf.find(e.tail);
      e.head = uf.find(e.head);
    }
    std::sort(edges.begin(), edges.end(), [](const GEdge& a, const GEdge& b) {
      return std::tie(a.label, a.tail, a.head) < std::tie(b.label, b.tail, b.head);
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size() && !changed; ++i) {
      const GEdge& a = edges[i];
      const GEdge& b = edges[i + 1];
      if (a.label == b.label && a.tail == b.tail) {
        uf.unite(a.head, b.head);
        changed = true;
      }
    }
    if (!changed) {
      // same-label shared head: rescan under (label, head) order
      std::vector<const GEdge*> by_head;
      by_head.reserve(edges.size());
      for (const GEdge& e : edges) by_head.push_back(&e);
      std::sort(by_head.begin(), by_head.end(),
                [](const GEdge* a, const GEdge* b) {
                  return std::tie(a->label, a->head, a->tail) <
                         std::tie(b->label, b->head, b->tail);
                });
      for (std::size_t i = 0; i + 1 < by_head.size() && !changed; ++i) {
        const GEdge& a = *by_head[i];
        const GEdge& b = *by_head[i + 1];
        if (a.label == b.label && a.head == b.head) {
          uf.unite(a.tail, b.tail);
          changed = true;
        }
      }
    }
  }
  // compact vertex ids
  std::vector<int> new_id(draft.num_vertices, -1);
  int next = 0;
  for (int v = 0; v < draft.num_vertices; ++v)
    if (uf.find(v) == v) new_id[v] = next++;
  FoldResult out;
  out.vertex_map.resize(draft.num_vertices);
  for (int v = 0; v < draft.num_vertices; ++v)
    out.vertex_map[v] = new_id[uf.find(v)];
  for (GEdge& e : edges) {
    e.tail = new_id[uf.find(e.tail)];
    e.head = new_id[uf.find(e.head)];
  }
  out.graph = CoreGraph(draft.rank, next, std::move(edges), true);
  return out;
}

PruneResult prune(const CoreGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<bool> dead(n, false);
  std::vector<bool> edge_dead(g.edges().size(), false);
  std::queue<int> low;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) low.push(v);
  while (!low.empty()) {
    int v = low.front();
    low.pop();
    if (dead[v] || deg[v] > 1) continue;
    dead[v] = true;
    for (int i = 0; i < int(g.edges().size()); ++i) {
      if (edge_dead[i]) continue;
      const GEdge& e = g.edges()[i];
      if (e.tail == v || e.head == v) {
        edge_dead[i] = true;
        for (int u : {e.tail, e.head}) {
          if (u == v) continue;
          if (--deg[u] <= 1 && !dead[u]) low.push(u);
        }
      }
    }
  }
  PruneResult out;
  out.vertex_map.assign(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (!dead[v]) out.vertex_map[v] = next++;
  std::vector<GEdge> edges;
  for (int i = 0; i < int(g.edges().size()); ++i) {
    if (edge_dead[i]) continue;
    const GEdge& e = g.edges()[i];
    edges.push_back({out.vertex_map[e.tail], out.vertex_map[e.head], e.label});
  }
  out.graph = CoreGraph(g.rank(), next, std::move(edges));
  return out;
}

CoreGraph cycle_graph(const CyclicWord& w) {
  const int n = int(w.letters.size());
  if (n == 0) throw internal_error("cycle of the empty word");
  std::vector<GEdge> edges;
  for (int i = 0; i < n; ++i) {
    const Letter& l = w.letters[i];
    int nxt = (i + 1) % n;
    if (l.sign > 0)
      edges.push_back({i, nxt, l.gen});
    else
      edges.push_back({nxt, i, l.gen});
  }
  return CoreGraph(w.rank, n, std::move(edges));
}

CoreGraph powers_graph(const CyclicWord& w, const std::vector<int>& exponents) {
  if (w.letters.empty()) throw internal_error("powers of the empty word");
  bool any = false;
  for (int e : exponents) any = any || e > 0;
  if (!any) throw internal_error("all exponents are zero");
  std::vector<GEdge> edges;
  int nv = 0;
  for (int i = 1; i <= int(exponents.size()); ++i) {
    if (exponents[i - 1] < 0) throw internal_error("negative exponent");
    for (int copy = 0; copy < exponents[i - 1]; ++copy) {
      const int n = int(w.letters.size()) * i;
      for (int k = 0; k < n; ++k) {
        const Letter& l = w.letters[k % w.letters.size()];
        int a = nv + k, b = nv + (k + 1) % n;
        if (l.sign > 0)
          edges.push_back({a, b, l.gen});
        else
          edges.push_back({b, a, l.gen});
      }
      nv += n;
    }
  }
  return CoreGraph(w.rank, nv, std::move(edges));
}

SubgroupGraph subgroup_graph(int rank, const std::vector<Word>& generators) {
  GraphDraft d;
  d.rank = rank;
  int base = d.add_vertex();
  for (const Word& w : generators) {
    if (w.rank != rank) throw internal_error("generator rank mismatch");
    if (w.empty()) continue;
    d.add_path(base, w.letters, base);
  }
  FoldResult folded = fold(d);
  PruneResult pruned = prune(folded.graph);
  SubgroupGraph out;
  out.graph = pruned.graph;
  int b = pruned.vertex_map[folded.vertex_map[base]];
  if (b >= 0) out.base_vertex = b;
  return out;
}

CoreGraph bouquet(int rank) {
  std::vector<GEdge> edges;
  for (int l = 0; l < rank; ++l) edges.push_back({0, 0, l});
  return CoreGraph(rank, 1, std::move(edges));
}

CoreGraph bouquet_of_labels(int rank, const std::vector<int>& labels) {
  std::vector<GEdge> edges;
  for (int l : labels) edges.push_back({0, 0, l});
  if (edges.empty()) return CoreGraph(rank, 0, {});
  return CoreGraph(rank, 1, std::move(edges));
}

GraphInvariants graph_invariants(const CoreGraph& g) {
  GraphInvariants inv;
  const int n = g.num_vertices();
  inv.component_of_vertex.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (inv.component_of_vertex[v] != -1) continue;
    int comp = inv.components++;
    std::queue<int> q;
    q.push(v);
    inv.component_of_vertex[v] = comp;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int l = 0; l < g.rank(); ++l)
        for (int w : {g.out(u, l), g.in(u, l)})
          if (w != -1 && inv.component_of_vertex[w] == -1) {
            inv.component_of_vertex[w] = comp;
            q.push(w);
          }
    }
  }
  inv.component_euler.assign(inv.components, 0);
  for (int v = 0; v < n; ++v) ++inv.component_euler[inv.component_of_vertex[v]];
  for (const GEdge& e : g.edges())
    --inv.component_euler[inv.component_of_vertex[e.tail]];
  inv.euler = n - int(g.edges().size());
  inv.free_rank = inv.components - inv.euler;
  return inv;
}

namespace {

// Forced BFS from one start vertex.  The graph is deterministic (folded),
// so discovery order is fully determined by (start, label order, out-then-in).
// Returns the code and the discovery order.
void bfs_code(const CoreGraph& g, int start, const std::vector<int>* colors,
              std::vector<int>& code, std::vector<int>& order) {
  code.clear();
  order.clear();
  std::vector<int> id(g.num_vertices(), -1);
  std::queue<int> q;
  id[start] = 0;
  order.push_back(start);
  q.push(start);
  auto touch = [&](int u) {
    if (u == -1) return -1;
    if (id[u] == -1) {
      id[u] = int(order.size());
      order.push_back(u);
      q.push(u);
    }
    return id[u];
  };
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int l = 0; l < g.rank(); ++l) {
      code.push_back(touch(g.out(v, l)));
      code.push_back(touch(g.in(v, l)));
    }
    if (colors) code.push_back(-10 - (*colors)[v]);
  }
}

}  // namespace

std::vector<int> canonical_code(const CoreGraph& g,
                                const std::vector<int>* colors) {
  GraphInvariants inv = graph_invariants(g);
  std::vector<std::vector<int>> comp_codes(inv.components);
  std::vector<int> code, order;
  for (int comp = 0; comp < inv.components; ++comp) {
    std::vector<int>& best = comp_codes[comp];
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (inv.component_of_vertex[v] != comp) continue;
      bfs_code(g, v, colors, code, order);
      if (best.empty() || code < best) best = code;
    }
  }
  std::sort(comp_codes.begin(), comp_codes.end());
  std::vector<int> out;
  out.push_back(g.rank());
  out.push_back(inv.components);
  for (const auto& c : comp_codes) {
    out.push_back(-2);  // separator
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::optional<std::vector<int>> find_isomorphism(const CoreGraph& g,
                                                 const CoreGraph& h) {
  if (g.rank() != h.rank() || g.num_vertices() != h.num_vertices() ||
      g.edges().size() != h.edges().size())
    return std::nullopt;
  GraphInvariants ig = graph_invariants(g);
  GraphInvariants ih = graph_invariants(h);
  if (ig.components != ih.components) return std::nullopt;

  // Canonical code and witnessing discovery order per component.
  auto comp_data = [](const CoreGraph& gr, const GraphInvariants& inv) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> data(
        inv.components);
    std::vector<int> code, order;
    for (int v = 0; v < gr.num_vertices(); ++v) {
      int c = inv.component_of_vertex[v];
      bfs_code(gr, v, nullptr, code, order);
      if (data[c].first.empty() || code < data[c].first)
        data[c] = {code, order};
    }
    return data;
  };
  auto dg = comp_data(g, ig);
  auto dh = comp_data(h, ih);

  // Greedy multiset matching of components by code.
  std::vector<bool> used(dh.size(), false);
  std::vector<int> map(g.num_vertices(), -1);
  for (auto& [code, order] : dg) {
    bool matched = false;
    for (std::size_t j = 0; j < dh.size(); ++j) {
      if (used[j] || dh[j].first != code) continue;
      used[j] = true;
      for (std::size_t k = 0; k < order.size(); ++k)
        map[order[k]] = dh[j].second[k];
      matched = true;
      break;
    }
    if (!matched) return std::nullopt;
  }
  // sanity: every edge must carry over
  for (const GEdge& e : g.edges())
    if (h.out(map[e.tail], e.label) != map[e.head]) return std::nullopt;
  return map;
}

std::vector<Word> pi1_basis(const CoreGraph& g, int base) {
  if (base < 0 || base >= g.num_vertices())
    throw internal_error("pi1 base vertex out of range");
  std::vector<std::optional<std::vector<Letter>>> path(g.num_vertices());
  std::vector<int> tree_edge(g.edges().size(), 0);
  path[base] = std::vector<Letter>{};
  std::queue<int> q;
  q.push(base);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int l = 0; l < g.rank(); ++l) {
      if (int u = g.out(v, l); u != -1 && !path[u]) {
        path[u] = *path[v];
        path[u]->push_back(Letter(l, +1));
        tree_edge[g.edge_out(v, l)] = 1;
        q.push(u);
      }
      if (int u = g.in(v, l); u != -1 && !path[u]) {
        path[u] = *path[v];
        path[u]->push_back(Letter(l, -1));
        tree_edge[g.edge_in(v, l)] = 1;
        q.push(u);
      }
    }
  }
  auto keys = [](const std::vector<Letter>& ls) {
    std::vector<int> ks;
    ks.reserve(ls.size());
    for (const Letter& l : ls) ks.push_back(l.key());
    return ks;
  };
  std::vector<Word> basis;
  for (int i = 0; i < int(g.edges().size()); ++i) {
    if (tree_edge[i]) continue;
    const GEdge& e = g.edges()[i];
    if (!path[e.tail] || !path[e.head]) continue;  // other component
    std::vector<Letter> w = *path[e.tail];
    w.push_back(Letter(e.label, +1));
    for (auto it = path[e.head]->rbegin(); it != path[e.head]->rend(); ++it)
      w.push_back(it->inverse());
    // orient the loop so its cyclic form is the smaller of the two
    // directions; the word itself breaks ties
    Word fwd(g.rank(), std::move(w));
    Word bwd = invert(fwd);
    auto fc = keys(cyclic_reduce(fwd).cyclic.letters);
    auto bc = keys(cyclic_reduce(bwd).cyclic.letters);
    if (bc < fc || (bc == fc && keys(bwd.letters) < keys(fwd.letters)))
      basis.push_back(std::move(bwd));
    else
      basis.push_back(std::move(fwd));
  }
  return basis;
}

std::string label_name(int l) { return "b" + std::to_string(l + 1); }

std::string to_dot(const CoreGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v = 0; v < g.num_vertices(); ++v)
    os << "  v" << v << " [shape=circle,label=\"" << v << "\"];\n";
  for (const GEdge& e : g.edges())
    os << "  v" << e.tail << " -> v" << e.head << " [label=\""
       << label_name(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace wm
