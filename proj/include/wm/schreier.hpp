#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "wm/oracle.hpp"

namespace wm {

// Action graph of r permutations of {0..N-1} on ordered s-tuples of
// distinct points: one vertex per tuple, one undirected edge per (tuple,
// generator).  2r-regular once loops are counted twice.
class SchreierGraph {
 public:
  SchreierGraph(int r, int s, int N, std::vector<Perm> perms);

  int r() const { return r_; }
  int s() const { return s_; }
  int big_n() const { return N_; }
  int degree() const { return 2 * r_; }
  long num_vertices() const { return long(tuples_.size()); }
  const std::vector<Perm>& perms() const { return perms_; }

  // Vertex moved by generator g (forward) / its inverse (backward).
  long step(long v, int g) const { return fwd_[g][v]; }
  long step_back(long v, int g) const { return bwd_[g][v]; }
  const std::vector<int>& tuple_of(long v) const { return tuples_[v]; }

 private:
  int r_, s_, N_;
  std::vector<Perm> perms_;
  std::vector<std::vector<int>> tuples_;
  std::vector<std::vector<long>> fwd_, bwd_;  // [generator][vertex]
};

SchreierGraph build_schreier(int r, int s, int N, std::uint64_t seed);
SchreierGraph build_schreier(int r, int s, int N, std::vector<Perm> perms);

// Largest absolute adjacency eigenvalue after removing one copy of the
// trivial eigenvalue d (loops add 2 to the diagonal, so row sums are d).
double adjacency_mu(const SchreierGraph& g);
std::vector<double> adjacency_spectrum(const SchreierGraph& g);

// Directed-edge (non-backtracking) matrix: entry (e, f) = 1 when f starts
// where e ends and f is not e reversed.  Size d * num_vertices.
struct HashimotoSpectrum {
  std::vector<std::complex<double>> values;
  double nu = 0;                 // second largest modulus
  bool ihara_bass_ok = false;    // multiset matched the quadratic image
  double ihara_bass_max_err = 0; // largest pairing distance (relative)
};
HashimotoSpectrum hashimoto_spectrum(const SchreierGraph& g,
                                     double rel_tol = 1e-6);

// Exact check: trace of the t-th power of the directed-edge matrix equals
// the sum over cyclically reduced words of length t of the number of fixed
// s-tuples of the word's permutation.
struct TraceCheck {
  Int lhs;   // tr(B^t), exact integer arithmetic
  Int rhs;   // sum over words
  bool equal = false;
};
TraceCheck trace_identity_check(const SchreierGraph& g, int t);

// Random trials of mu against the benchmark 2 sqrt(d-1) exp(2 s^2 / (e^2 (d-1))).
struct BoundTrial {
  int N = 0;
  std::uint64_t seed = 0;
  double mu = 0;
  bool below = false;
};
struct BoundExperiment {
  int r = 0, s = 0;
  double bound = 0;
  std::vector<BoundTrial> trials;
  double pass_rate = 0;
};
BoundExperiment bound_experiment(int r, int s, const std::vector<int>& Ns,
                                 int trials, std::uint64_t seed);

double spectral_benchmark(int d, int s);

// One CSV row per trial: N,mu,bound,below,seed.
std::string bound_experiment_csv(const BoundExperiment& e);

}  // namespace wm
