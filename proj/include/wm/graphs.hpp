#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wm/words.hpp"

namespace wm {

// Directed edge labeled by a generator.  Head/tail are vertex indices.
struct GEdge {
  int tail = 0;
  int head = 0;
  int label = 0;
  bool operator==(const GEdge&) const = default;
};

// Mutable labeled multigraph used while building: may be unfolded, may have
// leaves or isolated vertices.  Vertices are 0..num_vertices-1.
struct GraphDraft {
  int rank = 0;
  int num_vertices = 0;
  std::vector<GEdge> edges;

  int add_vertex() { return num_vertices++; }
  void add_edge(int tail, int head, int label);
  // Append a path spelling w from `from`, with fresh interior vertices,
  // ending at `to` (pass -1 to leave the far end fresh; returns it).
  int add_path(int from, const std::vector<Letter>& ls, int to = -1);
};

// A folded labeled graph in which every vertex has degree >= 2 (loops count
// twice).  Possibly empty, possibly disconnected.  Fixed after construction.
// For each vertex and label there is at most one outgoing and at most one
// incoming edge, so edge lookups are functional.
class CoreGraph {
 public:
  CoreGraph() = default;
  CoreGraph(int rank, int num_vertices, std::vector<GEdge> edges,
            bool allow_low_degree = false);

  int rank() const { return rank_; }
  int num_vertices() const { return nv_; }
  const std::vector<GEdge>& edges() const { return edges_; }
  bool empty() const { return nv_ == 0; }

  // Functional lookups: vertex at the far end of the label-l edge out of /
  // into v, or -1.  edge_out/edge_in give the edge index instead.
  int out(int v, int l) const { return out_[idx(v, l)]; }
  int in(int v, int l) const { return in_[idx(v, l)]; }
  int edge_out(int v, int l) const { return eout_[idx(v, l)]; }
  int edge_in(int v, int l) const { return ein_[idx(v, l)]; }

  int degree(int v) const;
  bool operator==(const CoreGraph&) const = default;

 private:
  std::size_t idx(int v, int l) const { return std::size_t(v) * rank_ + l; }
  int rank_ = 0;
  int nv_ = 0;
  std::vector<GEdge> edges_;
  std::vector<int> out_, in_, eout_, ein_;  // (vertex, label) -> vertex/edge
};

// Stallings fold: merge same-label edges sharing a tail or a head until the
// graph is deterministic.  Leaves and isolated vertices are kept.
// vertex_map[old draft vertex] = vertex of the folded graph.
struct FoldResult {
  CoreGraph graph;          // folded, but possibly with degree-1 vertices
  std::vector<int> vertex_map;
};
FoldResult fold(const GraphDraft& draft);

// Iteratively delete degree<=1 vertices.  vertex_map entries for removed
// vertices are -1.  The result is a genuine core graph (or empty).
struct PruneResult {
  CoreGraph graph;
  std::vector<int> vertex_map;
};
PruneResult prune(const CoreGraph& g);

// Cycle spelling a cyclically reduced word: |w| vertices, |w| edges.
CoreGraph cycle_graph(const CyclicWord& w);

// Disjoint union of exponents[i-1] copies of the cycle of w^i (1-based i).
CoreGraph powers_graph(const CyclicWord& w, const std::vector<int>& exponents);

// Wedge the generator words at a base vertex, fold, prune.  base_vertex is
// the image of the wedge point if it survived pruning.
struct SubgroupGraph {
  CoreGraph graph;
  std::optional<int> base_vertex;
};
SubgroupGraph subgroup_graph(int rank, const std::vector<Word>& generators);

// Bouquet: one vertex, one loop per generator.
CoreGraph bouquet(int rank);

// Restriction of a bouquet to a subset of generator labels, as a core graph
// over the full ambient rank (labels keep their indices).
CoreGraph bouquet_of_labels(int rank, const std::vector<int>& labels);

struct GraphInvariants {
  int euler = 0;       // chi = V - E
  int components = 0;
  int free_rank = 0;   // rk = c - chi
  std::vector<int> component_of_vertex;
  std::vector<int> component_euler;
};
GraphInvariants graph_invariants(const CoreGraph& g);

// Canonical form: per component, the minimum BFS code over start vertices;
// whole graph = sorted component codes.  Equal codes iff isomorphic as
// labeled graphs.  `colors`, when given, must match exactly under the
// isomorphism; renumbering colors changes the code.
std::vector<int> canonical_code(const CoreGraph& g,
                                const std::vector<int>* colors = nullptr);

// An explicit isomorphism g -> h if one exists.
std::optional<std::vector<int>> find_isomorphism(const CoreGraph& g,
                                                 const CoreGraph& h);

// Free generating set of the fundamental group at `base`, one word per
// non-tree edge of a BFS spanning tree of base's component.
std::vector<Word> pi1_basis(const CoreGraph& g, int base);

// Graphviz text.  Deterministic: vertices and edges in index order.
std::string to_dot(const CoreGraph& g, const std::string& name = "G");

// Edge-label names b1, b2, ... used in DOT output (1-based basis index).
std::string label_name(int l);

}  // namespace wm
