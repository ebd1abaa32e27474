#pragma once

#include <optional>
#include <vector>

#include "wm/characters.hpp"
#include "wm/morphisms.hpp"
#include "wm/phi.hpp"
#include "wm/words.hpp"

namespace wm {

// Primitivity rank of a word, and its witnesses.  pi is absent when the
// word is primitive (no witness exists; conventionally infinite), and 0
// exactly for the trivial word.  Each witness is the core graph of a
// subgroup attaining the rank, given with the map from the word cycle
// into it and a generating set.
struct Witness {
  CoreGraph subgroup;
  Morphism embedding;          // cycle of w  ->  subgroup graph
  std::vector<Word> generators;
};

struct PrimitivityReport {
  std::optional<int> pi;       // nullopt = infinite (w primitive or trivial)
  std::vector<Witness> critical;
};
PrimitivityReport primitivity(const Word& w, const EnumLimits& limits = {});

// Maximal negative Euler characteristic over admissible factorizations of
// the powers-graph morphism of a non-power w with exponent vector alpha.
// Equals 1 - pi(w), both infinite for primitive words (absent optional,
// empty witness list); a finite disagreement is an internal error.
struct AkReport {
  std::optional<int> chi_ak_max;
  std::vector<Decomposition> critical;
};
AkReport chi_ak_max(const Word& w, const std::vector<int>& alpha,
                    PhiContext& ctx);

// E[prod_k xi_k(w(s))^alpha_k] over independent uniform s in S_N^rank, as
// an exact rational function of N, with the data entering its second-order
// behaviour.  Proper powers are rewritten onto their root first:
// xi_k of u^d pulls back to xi_{kd} of u.
struct ExpectationReport {
  Word word;
  std::vector<int> alpha;           // as given
  Word root;                        // max root of the cyclic reduction
  int root_exponent = 1;
  std::vector<int> root_alpha;      // exponents after rewriting onto root
  RatFn value;
  Rat e_unif;                       // limit value, on the root exponents
  Rat c_const;                      // <root monomial, xi_1 - 1>
  std::optional<int> pi;            // primitivity rank of the root
  std::size_t crit_count = 0;       // number of critical witnesses of root
};
ExpectationReport expectation(const Word& w, const std::vector<int>& alpha,
                              PhiContext& ctx);

// Limit of the monomial's expectation: sum over set partitions of the
// multiset of power indices; a block B contributes sum_{d | gcd B} d^{|B|-1}.
Rat e_unif_monomial(const std::vector<int>& alpha);

// <monomial, xi_1 - 1> by the companion combinatorial sum (one block of the
// partition is distinguished and drops its own factor).  Used as an
// independent cross-check of the Poisson-moment route.
Rat inner_with_xi1_minus_1(const std::vector<int>& alpha);

// Conjugacy in the ambient free group, decided on root words and root
// exponents.  Counts of characteristic two-step factorizations of the
// two-cycle diagram are reported as supporting evidence.
struct ConjugacyReport {
  bool conjugate = false;
  Word root_u, root_v;
  int exp_u = 1, exp_v = 1;
  bool roots_conjugate = false;
  long paired_cycle_count = 0;      // tau(k) tau(m) when roots conjugate
  long joint_cycle_count = 0;       // sum of d over d | gcd(k, m), else 0
};
ConjugacyReport decide_conjugate(const Word& u, const Word& v);

}  // namespace wm
