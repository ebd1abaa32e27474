#include "wm/wordstats.hpp"

#include <algorithm>
#include <numeric>

#include "wm/errors.hpp"

namespace wm {

namespace {

// the cycle of a nontrivial word mapped to the one-vertex rose
Morphism rose_morphism(const CoreGraph& g) {
  CoreGraph rose = bouquet(g.rank());
  std::vector<int> vm(g.num_vertices(), 0);
  return make_morphism(g, rose, std::move(vm));
}

std::vector<Word> witness_generators(const Morphism& first) {
  int base = first.vertex_map.empty() ? 0 : first.vertex_map[0];
  return pi1_basis(first.cod, base);
}

}  // namespace

PrimitivityReport primitivity(const Word& w, const EnumLimits& limits) {
  PrimitivityReport report;
  if (w.letters.empty()) {
    report.pi = 0;  // the trivial word, by convention
    return report;
  }
  CyclicReduction cr = cyclic_reduce(w);
  CoreGraph cyc = cycle_graph(cr.cyclic);
  Morphism onto = image_factor(rose_morphism(cyc)).onto;
  CriticalScan scan = chi_max_and_crit(onto, false, limits);
  if (!scan.any) return report;  // primitive: rank is infinite
  report.pi = 1 - scan.chi_max;
  for (const Decomposition& d : scan.critical)
    report.critical.push_back(
        Witness{d.first.cod, d.first, witness_generators(d.first)});
  return report;
}

AkReport chi_ak_max(const Word& w, const std::vector<int>& alpha,
                    PhiContext& ctx) {
  if (w.letters.empty())
    throw internal_error("power scan of the trivial word");
  CyclicReduction cr = cyclic_reduce(w);
  RootPower rp = max_root(word_of(cr.cyclic));
  if (rp.exponent != 1)
    throw internal_error("power scan requires a non-power word");
  if (std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; }))
    throw internal_error("power scan of an empty exponent vector");
  CoreGraph graph = powers_graph(cr.cyclic, alpha);
  Morphism onto = image_factor(rose_morphism(graph)).onto;
  AkReport report;
  CriticalScan scan = chi_max_and_crit(onto, true, ctx.limits());
  PrimitivityReport prim = primitivity(w, ctx.limits());
  if (!scan.any) {
    if (prim.pi.has_value())
      throw internal_error("no admissible factorization for an imprimitive word");
    return report;
  }
  if (!prim.pi.has_value() || scan.chi_max != 1 - *prim.pi)
    throw internal_error("power scan disagrees with primitivity rank");
  report.chi_ak_max = scan.chi_max;
  report.critical = std::move(scan.critical);
  return report;
}

namespace {

// Sum over set partitions of the labeled index multiset; each block
// contributes sum of d^{|B|-1} over divisors d of the gcd of its values.
// With `marked`, one block per partition is distinguished and contributes
// the factor 1 instead.
Rat partition_sum(const std::vector<int>& values, bool marked) {
  int n = int(values.size());
  if (n == 0) return marked ? Rat(0) : Rat(1);
  std::vector<int> bgcd, bsize;
  Rat total = 0;
  auto block_factor = [&](int b) {
    long g = bgcd[b], s = 0;
    for (long d = 1; d <= g; ++d)
      if (g % d == 0) {
        long p = 1;
        for (int i = 0; i < bsize[b] - 1; ++i) p *= d;
        s += p;
      }
    return Rat(s);
  };
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      Rat prod = 1;
      for (std::size_t b = 0; b < bgcd.size(); ++b) prod *= block_factor(int(b));
      if (!marked) {
        total += prod;
      } else {
        for (std::size_t b = 0; b < bgcd.size(); ++b)
          total += prod / block_factor(int(b));
      }
      return;
    }
    for (int b = 0; b <= int(bgcd.size()); ++b) {
      if (b == int(bgcd.size())) {
        bgcd.push_back(values[v]);
        bsize.push_back(1);
        self(self, v + 1);
        bgcd.pop_back();
        bsize.pop_back();
      } else {
        int og = bgcd[b];
        bgcd[b] = int(std::gcd(og, values[v]));
        ++bsize[b];
        self(self, v + 1);
        bgcd[b] = og;
        --bsize[b];
      }
    }
  };
  rec(rec, 0);
  return total;
}

std::vector<int> value_list(const std::vector<int>& alpha) {
  std::vector<int> values;
  for (int k = 1; k <= int(alpha.size()); ++k) {
    if (alpha[k - 1] < 0) throw internal_error("negative exponent");
    for (int i = 0; i < alpha[k - 1]; ++i) values.push_back(k);
  }
  return values;
}

}  // namespace

Rat e_unif_monomial(const std::vector<int>& alpha) {
  return partition_sum(value_list(alpha), false);
}

Rat inner_with_xi1_minus_1(const std::vector<int>& alpha) {
  return partition_sum(value_list(alpha), true);
}

ExpectationReport expectation(const Word& w, const std::vector<int>& alpha,
                              PhiContext& ctx) {
  if (w.letters.empty())
    throw internal_error("expectation of the trivial word");
  if (alpha.empty() ||
      std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; }))
    throw internal_error("expectation of an empty monomial");
  ExpectationReport report;
  report.word = w;
  report.alpha = alpha;
  CyclicReduction cr = cyclic_reduce(w);
  RootPower rp = max_root(word_of(cr.cyclic));
  report.root = rp.root;
  report.root_exponent = rp.exponent;
  // the k-th power stat of u^d is the (kd)-th power stat of u
  report.root_alpha.assign(alpha.size() * rp.exponent, 0);
  for (int k = 1; k <= int(alpha.size()); ++k)
    report.root_alpha[k * rp.exponent - 1] = alpha[k - 1];
  CoreGraph graph = powers_graph(
      cyclic_of_reduced(report.root.rank, report.root.letters),
      report.root_alpha);
  report.value = ctx.phi(rose_morphism(graph));
  report.e_unif = e_unif_monomial(report.root_alpha);
  report.c_const = inner_with_xi1_minus_1(report.root_alpha);
  PrimitivityReport prim = primitivity(report.root, ctx.limits());
  report.pi = prim.pi;
  report.crit_count = prim.critical.size();
  return report;
}

ConjugacyReport decide_conjugate(const Word& u, const Word& v) {
  ConjugacyReport report;
  if (u.rank != v.rank)
    throw internal_error("conjugacy test across different ranks");
  bool tu = u.letters.empty(), tv = v.letters.empty();
  if (tu || tv) {
    report.conjugate = tu && tv;
    report.root_u = u;
    report.root_v = v;
    return report;
  }
  CyclicReduction cu = cyclic_reduce(u), cv = cyclic_reduce(v);
  RootPower ru = max_root(word_of(cu.cyclic)),
            rv = max_root(word_of(cv.cyclic));
  report.root_u = ru.root;
  report.root_v = rv.root;
  report.exp_u = ru.exponent;
  report.exp_v = rv.exponent;
  report.roots_conjugate = is_conjugate_rotation(ru.root, rv.root);
  report.conjugate = report.roots_conjugate && ru.exponent == rv.exponent;
  if (report.roots_conjugate) {
    auto tau = [](int n) {
      long t = 0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) ++t;
      return t;
    };
    report.paired_cycle_count = tau(ru.exponent) * tau(rv.exponent);
    int g = std::gcd(ru.exponent, rv.exponent);
    long s = 0;
    for (int d = 1; d <= g; ++d)
      if (g % d == 0) s += d;
    report.joint_cycle_count = s;
  }
  return report;
}

}  // namespace wm
