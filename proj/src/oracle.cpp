#include "wm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wm/errors.hpp"

namespace wm {

Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Perm perm_inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = int(i);
  return out;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0, j = int(i);
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

Perm evaluate_word(const Word& w, const std::vector<Perm>& gens) {
  if (int(gens.size()) != w.rank)
    throw internal_error("generator tuple size mismatch");
  int n = gens.empty() ? 0 : int(gens[0].size());
  Perm out = perm_identity(n);
  // multiply generator images left to right; products compose like
  // functions, so the first letter ends up outermost
  for (const Letter& l : w.letters) {
    const Perm& g = gens[l.gen];
    if (l.sign > 0) {
      out = perm_compose(out, g);
    } else {
      out = perm_compose(out, perm_inverse(g));
    }
  }
  return out;
}

Rat eval_class_function(const ClassFun& f, const Perm& p) {
  std::vector<int> type = cycle_type(p);
  std::vector<long long> mult;
  for (int c : type) {
    if (c > int(mult.size())) mult.resize(c, 0);
    ++mult[c - 1];
  }
  Rat out = 0;
  for (const auto& [e, coeff] : f.terms) {
    Rat term = coeff;
    for (int k = 1; k <= int(e.size()); ++k) {
      if (e[k - 1] == 0) continue;
      long long stat = 0;
      if (f.basis == Basis::a) {
        stat = k <= int(mult.size()) ? mult[k - 1] : 0;
      } else {
        for (int t = 1; t <= std::min<int>(k, int(mult.size())); ++t)
          if (k % t == 0) stat += (long long)t * mult[t - 1];
      }
      for (int i = 0; i < e[k - 1]; ++i) term *= Rat(stat);
    }
    out += term;
  }
  return out;
}

namespace {

void check_budget(int rank, int N, const ExactBudget& budget) {
  if (budget.relax) return;
  int cap = rank == 2 ? budget.max_n_rank2 : budget.max_n_rank3;
  if (rank <= 1) cap = 8;
  if (rank > 3) cap = 3;
  if (N > cap) throw budget_error("exact enumeration beyond the budget");
}

// iterate all tuples in S_N^rank
template <typename F>
void for_all_tuples(int rank, int N, F&& fn) {
  std::vector<Perm> tuple(rank);
  std::vector<Perm> base;
  Perm p = perm_identity(N);
  do {
    base.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::size_t> idx(rank, 0);
  while (true) {
    for (int i = 0; i < rank; ++i) tuple[i] = base[idx[i]];
    fn(tuple);
    int i = rank - 1;
    while (i >= 0 && ++idx[i] == base.size()) {
      idx[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace

Rat exact_expectation(const Word& w, const ClassFun& f, int N,
                      const ExactBudget& budget) {
  check_budget(w.rank, N, budget);
  Rat sum = 0;
  std::uint64_t count = 0;
  for_all_tuples(w.rank, N, [&](const std::vector<Perm>& tuple) {
    sum += eval_class_function(f, evaluate_word(w, tuple));
    ++count;
  });
  return sum / Rat(count);
}

Rat exact_expectation_multiset(const std::vector<Word>& words, int rank,
                               int N, const ExactBudget& budget) {
  check_budget(rank, N, budget);
  for (const Word& w : words)
    if (w.rank != rank) throw internal_error("word rank mismatch");
  Rat sum = 0;
  std::uint64_t count = 0;
  for_all_tuples(rank, N, [&](const std::vector<Perm>& tuple) {
    Rat prod = 1;
    for (const Word& w : words) {
      Perm p = evaluate_word(w, tuple);
      long long fix = 0;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == int(i)) ++fix;
      prod *= Rat(fix);
    }
    sum += prod;
    ++count;
  });
  return sum / Rat(count);
}

namespace {

Perm random_perm(int n, std::mt19937_64& rng) {
  Perm p = perm_identity(n);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(p[i], p[d(rng)]);
  }
  return p;
}

McResult summarize(const std::vector<double>& vals) {
  McResult r;
  r.samples = vals.size();
  double sum = 0;
  for (double v : vals) sum += v;
  r.mean = sum / double(vals.size());
  double ss = 0;
  for (double v : vals) ss += (v - r.mean) * (v - r.mean);
  if (vals.size() > 1)
    r.stderr_ = std::sqrt(ss / double(vals.size() - 1) / double(vals.size()));
  return r;
}

}  // namespace

McResult mc_expectation(const Word& w, const ClassFun& f, int N,
                        std::uint64_t samples, std::uint64_t seed) {
  std::vector<double> vals;
  vals.reserve(samples);
  std::vector<Perm> tuple(w.rank);
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::mt19937_64 rng(seed ^ i);
    for (int g = 0; g < w.rank; ++g) tuple[g] = random_perm(N, rng);
    Rat v = eval_class_function(f, evaluate_word(w, tuple));
    vals.push_back(double(boost::multiprecision::numerator(v)) /
                   double(boost::multiprecision::denominator(v)));
  }
  return summarize(vals);
}

McResult lift_count_expectation(const Morphism& eta, int N,
                                std::uint64_t samples, std::uint64_t seed,
                                std::vector<Int>* each_sample) {
  const CoreGraph& dom = eta.dom;
  const int ne = int(eta.cod.edges().size());
  std::vector<double> vals;
  vals.reserve(samples);
  GraphInvariants inv = graph_invariants(dom);
  // per component: BFS order with a root, then every later vertex is pinned
  // to an earlier one through some edge
  struct Step {
    int vertex;
    int from;      // already-placed vertex
    int edge;      // dom edge index used
    bool forward;  // true: from --edge--> vertex
  };
  std::vector<int> roots;
  std::vector<Step> steps;
  {
    std::vector<bool> placed(dom.num_vertices(), false);
    for (int c = 0; c < inv.components; ++c) {
      int root = -1;
      for (int v = 0; v < dom.num_vertices() && root == -1; ++v)
        if (inv.component_of_vertex[v] == c) root = v;
      roots.push_back(root);
      placed[root] = true;
      std::vector<int> queue = {root};
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int i = 0; i < int(dom.edges().size()); ++i) {
          const GEdge& e = dom.edges()[i];
          if (e.tail == v && !placed[e.head]) {
            placed[e.head] = true;
            steps.push_back({e.head, v, i, true});
            queue.push_back(e.head);
          } else if (e.head == v && !placed[e.tail]) {
            placed[e.tail] = true;
            steps.push_back({e.tail, v, i, false});
            queue.push_back(e.tail);
          }
        }
      }
    }
  }
  std::vector<int> sheet;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::mt19937_64 rng(seed ^ s);
    std::vector<Perm> sigma(ne), sigma_inv(ne);
    for (int e = 0; e < ne; ++e) {
      sigma[e] = random_perm(N, rng);
      sigma_inv[e] = perm_inverse(sigma[e]);
    }
    // lifts factor over components; within one, the root sheet determines
    // everything, then the unused edges must close up
    Int total = 1;
    for (int c = 0; c < inv.components; ++c) {
      long long count = 0;
      for (int start = 0; start < N; ++start) {
        sheet.assign(dom.num_vertices(), -1);
        sheet[roots[c]] = start;
        for (const Step& st : steps) {
          if (inv.component_of_vertex[st.vertex] != c) continue;
          int e = eta.edge_map[st.edge];
          sheet[st.vertex] = st.forward ? sigma[e][sheet[st.from]]
                                        : sigma_inv[e][sheet[st.from]];
        }
        bool ok = true;
        for (int i = 0; i < int(dom.edges().size()) && ok; ++i) {
          const GEdge& e = dom.edges()[i];
          if (inv.component_of_vertex[e.tail] != c) continue;
          ok = sigma[eta.edge_map[i]][sheet[e.tail]] == sheet[e.head];
        }
        if (ok) ++count;
      }
      total *= count;
    }
    if (each_sample) each_sample->push_back(total);
    vals.push_back(double(total));
  }
  return summarize(vals);
}

}  // namespace wm
