#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wm/graphs.hpp"

namespace wm {

// A label-preserving graph map.  Both graphs are folded, so the edge map is
// determined by the vertex map; we cache it anyway.  Copies of the graphs
// are stored by value: instances are small and self-contained.
struct Morphism {
  CoreGraph dom;
  CoreGraph cod;
  std::vector<int> vertex_map;           // size dom.num_vertices()
  std::vector<int> edge_map;             // dom edge index -> cod edge index
  bool vertex_surjective = false;
  bool edge_surjective = false;
  bool injective = false;

  bool surjective() const { return vertex_surjective && edge_surjective; }
};

// Validates commutation with labels; throws internal_error on a non-map.
Morphism make_morphism(const CoreGraph& dom, const CoreGraph& cod,
                       std::vector<int> vertex_map);

Morphism identity_morphism(const CoreGraph& g);
Morphism compose(const Morphism& second, const Morphism& first);

// eta restricted onto its image:  eta = include . onto.
struct ImageFactorization {
  CoreGraph image;
  Morphism onto;     // dom -> image, surjective
  Morphism include;  // image -> cod, injective
};
ImageFactorization image_factor(const Morphism& eta);

// Fibered product of eta1: G1 -> D and eta2: G2 -> D (same codomain),
// pruned back to a core graph.  proj1/proj2 are the two projections.
struct Pullback {
  CoreGraph graph;
  Morphism proj1;
  Morphism proj2;
};
Pullback pullback(const Morphism& eta1, const Morphism& eta2);

// Vertex partitions are stored as block assignments in restricted-growth
// form: block(0) = 0 and block(v) <= 1 + max block over earlier vertices.
using Partition = std::vector<int>;

int block_count(const Partition& p);
Partition to_restricted_growth(std::vector<int> blocks);
Partition fiber_partition(const Morphism& eta);  // fibers of the vertex map

// Glue the blocks of p and fold.  The returned morphism is g -> quotient.
Morphism quotient_morphism(const CoreGraph& g, const Partition& p);

// One two-step factorization of a surjective eta: the partition p gives
// first: dom ->> mid (glue blocks of p, which by construction needs no
// folding), and second: mid ->> cod with eta = second . first.  Two
// decompositions are the same element iff their partitions are equal.
struct Decomposition {
  Partition partition;
  Morphism first;
  Morphism second;
};

struct EnumLimits {
  int max_partition_vertices = 14;  // refuse to enumerate beyond this
};

// All partitions of dom's vertices that refine eta's fibers and whose glued
// quotient is already deterministic (no folding).  Requires eta surjective.
// Streaming form returns the count; the partition passed to the callback is
// reused storage.
std::uint64_t for_each_decomposition(
    const Morphism& eta, const std::function<void(const Partition&)>& fn,
    const EnumLimits& limits = {});
std::vector<Decomposition> enumerate_decomp(const Morphism& eta,
                                            const EnumLimits& limits = {});

// Build the two legs determined by one valid partition.
Decomposition realize_decomposition(const Morphism& eta, const Partition& p);

// Chains dom ->> m1 ->> m2 ->> cod: pairs of nested valid partitions.
struct Decomposition3 {
  Partition p1, p2;  // p1 refines p2
  Morphism first, mid, last;
};
std::vector<Decomposition3> enumerate_decomp3(const Morphism& eta,
                                              const EnumLimits& limits = {});

// Fewest merge-then-fold steps realizing the surjective morphism eta, via
// BFS over fold-closed partitions of the domain.  max_depth, if set, turns
// the search into a bounded probe: nullopt means "more than max_depth".
std::optional<int> b_norm(const Morphism& eta,
                          std::optional<int> max_depth = std::nullopt);

// Distance of eta from being an embedding-like map:
//   norm = b_norm(onto part) + chi(image) - chi(cod),
// with codomain components missed by the image contributing -chi each.
int norm(const Morphism& eta);

// eta is free iff norm(eta) == chi(dom) - chi(cod).  Decided with a
// depth-capped b_norm probe, so it is cheap even when norms are large.
bool is_free(const Morphism& eta);

// A surjective eta is algebraic iff no proper two-step factorization has a
// free second leg.  Non-surjective maps are never algebraic here.
bool is_algebraic(const Morphism& eta);

// Cache of algebraicity results keyed by morphism_key; critical scans test
// many factorizations that repeat up to isomorphism, so sharing one of these
// across calls saves most of the work.
class AlgMemo {
 public:
  bool algebraic(const Morphism& eta);

 private:
  std::map<std::vector<int>, bool> memo_;
};

// Factor eta as (algebraic, free) with the middle graph's Euler
// characteristic maximal.  Unique up to isomorphism commuting with the legs.
struct AlgFreeFactorization {
  Morphism algebraic_part;
  Morphism free_part;
  int mid_euler = 0;
};
AlgFreeFactorization alg_free_factor(const Morphism& eta,
                                     const EnumLimits& limits = {});

// Scan all two-step factorizations of a surjective eta whose first leg is
// algebraic and not an isomorphism; keep those with maximal mid-graph Euler
// characteristic.  `require_negative` restricts to chi(mid) < 0.
struct CriticalScan {
  bool any = false;          // false: no admissible factorization at all
  int chi_max = 0;           // meaningful only when any
  std::vector<Decomposition> critical;
};
CriticalScan chi_max_and_crit(const Morphism& eta, bool require_negative = false,
                              const EnumLimits& limits = {},
                              AlgMemo* memo = nullptr);

// Independent check of norm(): iterative-deepening search over sequences of
// single unit moves (attach a loop spelling a word at a vertex; connect two
// components by a path spelling a word, possibly empty), each followed by
// folding, that transform dom into cod compatibly with eta.  Returns the
// minimal number of moves, or nullopt when the budget is exhausted first.
struct MoveSearchBudget {
  int max_word_len = 3;
  int max_depth = 4;
  std::uint64_t max_states = 2000000;
};
std::optional<int> norm_by_moves(const Morphism& eta,
                                 const MoveSearchBudget& budget = {});

// Cache key: domain canonical code with vertices colored by their image
// vertex.  Equal keys iff a domain isomorphism commutes with the two maps
// over the same codomain.  For surjective morphisms (the only kind cached)
// the vertex map pins the codomain, so equal keys imply equal results.
std::vector<int> morphism_key(const Morphism& eta);

}  // namespace wm
