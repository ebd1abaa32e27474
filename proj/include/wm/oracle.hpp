#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wm/characters.hpp"
#include "wm/morphisms.hpp"
#include "wm/words.hpp"

namespace wm {

// Permutation of {0..n-1} as its image table.
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
Perm perm_inverse(const Perm& p);
std::vector<int> cycle_type(const Perm& p);       // sorted descending

// Evaluate a word at a tuple of permutations (one per generator).
Perm evaluate_word(const Word& w, const std::vector<Perm>& gens);

// f at a single permutation, through its cycle counts.
Rat eval_class_function(const ClassFun& f, const Perm& p);

// Brute-force ground truth.  All averages iterate over every tuple in
// S_N^rank; feasible budgets are enforced (rank 2 up to N = 6, rank 3 up
// to N = 4 by default; `relax` lifts the guard for callers that accept
// multi-minute runs).  Throws budget_error beyond the budget.
struct ExactBudget {
  int max_n_rank2 = 6;
  int max_n_rank3 = 4;
  bool relax = false;
};

// E[f(w(s))] with s uniform in S_N^rank.
Rat exact_expectation(const Word& w, const ClassFun& f, int N,
                      const ExactBudget& budget = {});

// E[prod_i #fix(w_i(s))] for a multiset of words evaluated at a common s.
Rat exact_expectation_multiset(const std::vector<Word>& words, int rank,
                               int N, const ExactBudget& budget = {});

// Monte Carlo with a deterministic stream: trial i uses mt19937_64 seeded
// with seed ^ i, so results are reproducible byte for byte.
struct McResult {
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t samples = 0;
};
McResult mc_expectation(const Word& w, const ClassFun& f, int N,
                        std::uint64_t samples, std::uint64_t seed);

// Average lift count of eta through uniformly random degree-N covers of
// its codomain (one uniform permutation per codomain edge per sample).
// each_sample, when set, receives every sample's exact lift count.
McResult lift_count_expectation(const Morphism& eta, int N,
                                std::uint64_t samples, std::uint64_t seed,
                                std::vector<Int>* each_sample = nullptr);

}  // namespace wm
