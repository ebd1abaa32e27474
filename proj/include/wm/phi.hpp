#pragma once

#include <map>
#include <vector>

#include "wm/morphisms.hpp"
#include "wm/ratfn.hpp"

namespace wm {

// Expected number of lifts of eta through a uniformly random degree-N cover
// of its codomain, as an exact function of N, together with the three
// Moebius-style inversions of that quantity over the factorization order.
//
// Everything here memoizes on morphism_key, so repeated morphisms (and all
// isomorphic copies) are computed once per context.
class PhiContext {
 public:
  explicit PhiContext(EnumLimits limits = {}) : limits_(limits) {}

  // Average number of injective-on-fibers lifts.  Exact for N >= n_min,
  // where n_min is the largest codomain-edge fiber size (never below 1).
  RatFn L(const Morphism& eta);

  // Expected lift count; sum of L over all two-step factorizations of the
  // onto part of eta.  Free post-composition does not change the value.
  RatFn phi(const Morphism& eta);

  // Inversions: phi(eta) = sum over factorizations of R(first leg)
  //             phi(eta) = sum over chains of C(middle leg)
  //             phi(eta) = sum over chains of algebraic legs of Calg(middle)
  // R and C require eta surjective; Calg requires eta algebraic.
  RatFn R(const Morphism& eta);
  RatFn C(const Morphism& eta);
  RatFn Calg(const Morphism& eta);

  const EnumLimits& limits() const { return limits_; }

 private:
  RatFn R_inner(const Morphism& eta);
  RatFn C_inner(const Morphism& eta);
  RatFn Calg_inner(const Morphism& eta);

  EnumLimits limits_;
  std::map<std::vector<int>, RatFn> phi_memo_, r_memo_, c_memo_, calg_memo_;
  std::map<std::vector<int>, bool> alg_memo_;

 public:
  // is_algebraic with a per-context memo; used heavily by the scans.
  bool algebraic(const Morphism& eta);
};

// Number of fiber-preserving permutation assignments of total Cayley weight
// j: per fiber of size n there are c(n, n-k) permutations with weight k
// (unsigned Stirling numbers, first kind), convolved across fibers.
Int norm_count(const std::vector<int>& fiber_sizes, int j);

// Coefficients of the expansion of L(eta) at infinity computed straight
// from the fiber data (no polynomial division):
//   L = N^chi(dom) * sum_{p>=0} b_p N^{-p}, returns b_0..b_order.
std::vector<Rat> laurent_L_direct(const Morphism& eta, int order);

}  // namespace wm
