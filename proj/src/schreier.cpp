#include "wm/schreier.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "wm/errors.hpp"

namespace wm {

namespace {

void next_tuple_rec(int N, int s, std::vector<int>& cur,
                    std::vector<bool>& used,
                    std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == s) {
    out.push_back(cur);
    return;
  }
  for (int x = 0; x < N; ++x) {
    if (used[x]) continue;
    used[x] = true;
    cur.push_back(x);
    next_tuple_rec(N, s, cur, used, out);
    cur.pop_back();
    used[x] = false;
  }
}

}  // namespace

SchreierGraph::SchreierGraph(int r, int s, int N, std::vector<Perm> perms)
    : r_(r), s_(s), N_(N), perms_(std::move(perms)) {
  if (int(perms_.size()) != r) throw internal_error("wrong number of permutations");
  for (const Perm& p : perms_)
    if (int(p.size()) != N) throw internal_error("permutation degree mismatch");
  if (s < 1 || s > N) throw internal_error("tuple length out of range");
  double count = 1;
  for (int i = 0; i < s; ++i) count *= N - i;
  if (count > 2e6) throw budget_error("tuple space beyond the budget");
  std::vector<int> cur;
  std::vector<bool> used(N, false);
  next_tuple_rec(N, s, cur, used, tuples_);
  std::map<std::vector<int>, long> index;
  for (long i = 0; i < long(tuples_.size()); ++i) index[tuples_[i]] = i;
  fwd_.assign(r, std::vector<long>(tuples_.size()));
  bwd_.assign(r, std::vector<long>(tuples_.size()));
  std::vector<int> moved(s);
  for (int g = 0; g < r; ++g) {
    for (long v = 0; v < long(tuples_.size()); ++v) {
      for (int i = 0; i < s; ++i) moved[i] = perms_[g][tuples_[v][i]];
      long w = index.at(moved);
      fwd_[g][v] = w;
      bwd_[g][w] = v;
    }
  }
}

SchreierGraph build_schreier(int r, int s, int N, std::vector<Perm> perms) {
  return SchreierGraph(r, s, N, std::move(perms));
}

SchreierGraph build_schreier(int r, int s, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Perm> perms(r);
  for (int g = 0; g < r; ++g) {
    perms[g] = perm_identity(N);
    for (int i = N - 1; i > 0; --i) {
      std::uniform_int_distribution<int> d(0, i);
      std::swap(perms[g][i], perms[g][d(rng)]);
    }
  }
  return SchreierGraph(r, s, N, std::move(perms));
}

namespace {

Eigen::MatrixXd adjacency_matrix(const SchreierGraph& g) {
  const long n = g.num_vertices();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int gen = 0; gen < g.r(); ++gen)
    for (long v = 0; v < n; ++v) {
      long w = g.step(v, gen);
      A(v, w) += 1.0;
      A(w, v) += 1.0;  // a loop lands on the diagonal twice
    }
  return A;
}

}  // namespace

std::vector<double> adjacency_spectrum(const SchreierGraph& g) {
  if (g.num_vertices() > 4096)
    throw budget_error("adjacency eigensolve beyond the budget");
  Eigen::MatrixXd A = adjacency_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + g.num_vertices());
  std::sort(out.rbegin(), out.rend());
  return out;
}

double adjacency_mu(const SchreierGraph& g) {
  std::vector<double> ev = adjacency_spectrum(g);
  // remove one copy of the trivial row-sum eigenvalue d
  double d = g.degree();
  auto it = std::min_element(ev.begin(), ev.end(), [&](double a, double b) {
    return std::abs(a - d) < std::abs(b - d);
  });
  ev.erase(it);
  double mu = 0;
  for (double x : ev) mu = std::max(mu, std::abs(x));
  return mu;
}

namespace {

// darts: (vertex, slot) with slot in [0, 2r); slot g < r is the forward
// g-edge at the vertex, slot r + g the backward one
struct Darts {
  long n = 0;
  int r = 0;
  long total = 0;

  long id(long v, int slot) const { return v * 2 * r + slot; }
  long head(const SchreierGraph& g, long dart) const {
    long v = dart / (2 * r);
    int slot = int(dart % (2 * r));
    return slot < r ? g.step(v, slot) : g.step_back(v, slot - r);
  }
  long reverse(const SchreierGraph& g, long dart) const {
    long v = dart / (2 * r);
    int slot = int(dart % (2 * r));
    return slot < r ? id(g.step(v, slot), slot + r)
                    : id(g.step_back(v, slot - r), slot - r);
  }
};

Darts darts_of(const SchreierGraph& g) {
  Darts d;
  d.n = g.num_vertices();
  d.r = g.r();
  d.total = d.n * 2 * d.r;
  return d;
}

}  // namespace

HashimotoSpectrum hashimoto_spectrum(const SchreierGraph& g, double rel_tol) {
  Darts d = darts_of(g);
  if (d.total > 4096) throw budget_error("directed-edge matrix beyond the budget");
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(d.total, d.total);
  for (long e = 0; e < d.total; ++e) {
    long h = d.head(g, e);
    long rev = d.reverse(g, e);
    for (int slot = 0; slot < 2 * d.r; ++slot) {
      long f = d.id(h, slot);
      if (f == rev) continue;
      B(e, f) = 1.0;
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(B, /*computeEigenvectors=*/false);
  HashimotoSpectrum out;
  out.values.resize(d.total);
  for (long i = 0; i < d.total; ++i) out.values[i] = es.eigenvalues()[i];

  // second largest modulus: drop one copy of the Perron value d-1
  std::vector<double> mods(d.total);
  for (long i = 0; i < d.total; ++i) mods[i] = std::abs(out.values[i]);
  std::sort(mods.rbegin(), mods.rend());
  out.nu = mods.size() > 1 ? mods[1] : 0.0;

  // the adjacency spectrum determines the non-backtracking one: each
  // adjacency eigenvalue l contributes both roots of z^2 - l z + (d-1),
  // and the remaining 2(|E| - |V|) values are +-1 in equal number
  const double q = g.degree() - 1;
  std::vector<std::complex<double>> expected;
  for (double l : adjacency_spectrum(g)) {
    std::complex<double> disc = std::sqrt(std::complex<double>(l * l - 4 * q, 0));
    expected.push_back((l + disc) / 2.0);
    expected.push_back((l - disc) / 2.0);
  }
  long extra = d.total - 2 * d.n;
  for (long i = 0; i < extra / 2; ++i) {
    expected.push_back(1.0);
    expected.push_back(-1.0);
  }
  // greedy minimal-distance pairing of the two multisets
  std::vector<bool> used(expected.size(), false);
  double scale = q > 1 ? q : 1.0;
  out.ihara_bass_ok = expected.size() == out.values.size();
  for (const auto& v : out.values) {
    if (!out.ihara_bass_ok) break;
    double best = -1;
    long besti = -1;
    for (long i = 0; i < long(expected.size()); ++i) {
      if (used[i]) continue;
      double dist = std::abs(v - expected[i]);
      if (besti < 0 || dist < best) {
        best = dist;
        besti = i;
      }
    }
    used[besti] = true;
    out.ihara_bass_max_err = std::max(out.ihara_bass_max_err, best / scale);
  }
  if (out.ihara_bass_max_err > rel_tol) out.ihara_bass_ok = false;
  return out;
}

TraceCheck trace_identity_check(const SchreierGraph& g, int t) {
  if (t < 1) throw internal_error("trace power must be positive");
  Darts d = darts_of(g);
  if (d.total > 2048) throw budget_error("directed-edge matrix beyond the budget");
  // every entry of B^t is at most (d-1)^t since B has constant row sum d-1,
  // so the guard below keeps the int64 arithmetic exact
  if (g.degree() > 2 && t * std::log2(double(g.degree() - 1)) > 62)
    throw budget_error("trace power beyond exact integer range");
  using Mat = std::vector<std::vector<std::int64_t>>;
  Mat B(d.total, std::vector<std::int64_t>(d.total, 0));
  for (long e = 0; e < d.total; ++e) {
    long h = d.head(g, e);
    long rev = d.reverse(g, e);
    for (int slot = 0; slot < 2 * d.r; ++slot) {
      long f = d.id(h, slot);
      if (f != rev) B[e][f] = 1;
    }
  }
  auto mul = [&](const Mat& a, const Mat& b) {
    Mat c(d.total, std::vector<std::int64_t>(d.total, 0));
    for (long i = 0; i < d.total; ++i)
      for (long k = 0; k < d.total; ++k) {
        std::int64_t aik = a[i][k];
        if (!aik) continue;
        for (long j = 0; j < d.total; ++j) c[i][j] += aik * b[k][j];
      }
    return c;
  };
  Mat P = B;
  for (int i = 1; i < t; ++i) P = mul(P, B);
  TraceCheck out;
  Int lhs = 0;
  for (long i = 0; i < d.total; ++i) lhs += P[i][i];
  out.lhs = lhs;

  Int rhs = 0;
  for_each_cyclically_reduced(g.r(), t, [&](const Word& w) {
    Perm p = evaluate_word(w, g.perms());
    // a tuple is fixed exactly when every coordinate is
    long fixed = 0;
    for (long v = 0; v < g.num_vertices(); ++v) {
      const std::vector<int>& tup = g.tuple_of(v);
      bool ok = true;
      for (int i = 0; i < g.s() && ok; ++i) ok = p[tup[i]] == tup[i];
      if (ok) ++fixed;
    }
    rhs += fixed;
  });
  out.rhs = rhs;
  out.equal = out.lhs == out.rhs;
  return out;
}

double spectral_benchmark(int d, int s) {
  const double e = std::exp(1.0);
  return 2 * std::sqrt(double(d - 1)) *
         std::exp(2.0 * s * s / (e * e * (d - 1)));
}

BoundExperiment bound_experiment(int r, int s, const std::vector<int>& Ns,
                                 int trials, std::uint64_t seed) {
  BoundExperiment out;
  out.r = r;
  out.s = s;
  out.bound = spectral_benchmark(2 * r, s);
  long pass = 0, total = 0;
  for (int N : Ns)
    for (int i = 0; i < trials; ++i) {
      std::uint64_t trial_seed = seed ^ (std::uint64_t(N) << 32) ^ std::uint64_t(i);
      SchreierGraph g = build_schreier(r, s, N, trial_seed);
      BoundTrial trial;
      trial.N = N;
      trial.seed = trial_seed;
      trial.mu = adjacency_mu(g);
      trial.below = trial.mu <= out.bound;
      out.trials.push_back(trial);
      ++total;
      if (trial.below) ++pass;
    }
  out.pass_rate = total ? double(pass) / double(total) : 0.0;
  return out;
}

std::string bound_experiment_csv(const BoundExperiment& e) {
  std::ostringstream os;
  os << "N,mu,bound,below,seed\n";
  for (const BoundTrial& t : e.trials)
    os << t.N << "," << t.mu << "," << e.bound << "," << (t.below ? 1 : 0)
       << "," << t.seed << "\n";
  return os.str();
}

}  // namespace wm
