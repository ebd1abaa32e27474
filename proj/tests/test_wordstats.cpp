#include "wm/wordstats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wm/characters.hpp"
#include "wm/errors.hpp"
#include "wm/ratfn.hpp"
#include "wm/words.hpp"

namespace wm {
namespace {

Word W(const std::string& text, int rank) { return parse_word(text, rank); }

long tau(int m) {
  long t = 0;
  for (int d = 1; d <= m; ++d)
    if (m % d == 0) ++t;
  return t;
}

// exponent vector (multiplicities) of a partition seen as a multiset
std::vector<int> alpha_of(const IntPartition& mu) {
  std::vector<int> alpha(mu.empty() ? 0 : mu[0], 0);
  for (int p : mu) ++alpha[p - 1];
  return alpha;
}

// rotation-by-rotation comparison of two cyclically reduced words
bool naive_rotation_conjugate(const Word& u, const Word& v) {
  if (u.letters.size() != v.letters.size()) return false;
  int n = int(u.letters.size());
  if (n == 0) return true;
  for (int r = 0; r < n; ++r) {
    bool match = true;
    for (int i = 0; i < n && match; ++i)
      match = u.letters[i] == v.letters[(i + r) % n];
    if (match) return true;
  }
  return false;
}

TEST(Primitivity, PrimitiveWordsHaveNoWitness) {
  for (const char* text : {"x", "y", "xy", "xyX", "Yx"}) {
    PrimitivityReport r = primitivity(W(text, 2));
    EXPECT_FALSE(r.pi.has_value()) << text;
    EXPECT_TRUE(r.critical.empty()) << text;
  }
  // the trivial word sits below everything and reports rank 0
  PrimitivityReport t = primitivity(Word{2, {}});
  ASSERT_TRUE(t.pi.has_value());
  EXPECT_EQ(*t.pi, 0);
  EXPECT_TRUE(t.critical.empty());
}

TEST(Primitivity, PowersOfAGenerator) {
  for (int m = 2; m <= 6; ++m) {
    PrimitivityReport r = primitivity(W("x^" + std::to_string(m), 1));
    ASSERT_TRUE(r.pi.has_value()) << m;
    EXPECT_EQ(*r.pi, 1);
    // one witness per proper divisor d of m: the subgroup of d-th powers
    EXPECT_EQ(long(r.critical.size()), tau(m) - 1) << m;
  }

  PrimitivityReport r6 = primitivity(W("x^6", 1));
  std::set<std::pair<int, std::string>> seen;
  for (const Witness& wit : r6.critical) {
    ASSERT_EQ(wit.generators.size(), 1u);
    EXPECT_EQ(wit.embedding.dom.num_vertices(), 6);
    EXPECT_EQ(wit.embedding.cod.num_vertices(), wit.subgroup.num_vertices());
    EXPECT_TRUE(wit.embedding.surjective());
    seen.insert({wit.subgroup.num_vertices(), print_word(wit.generators[0])});
  }
  std::set<std::pair<int, std::string>> expect = {
      {1, "x"}, {2, "xx"}, {3, "xxx"}};
  EXPECT_EQ(seen, expect);
}

TEST(Primitivity, CommutatorHasTheFullGroupAsWitness) {
  PrimitivityReport r = primitivity(W("xyXY", 2));
  ASSERT_TRUE(r.pi.has_value());
  EXPECT_EQ(*r.pi, 2);
  ASSERT_EQ(r.critical.size(), 1u);
  const Witness& wit = r.critical[0];
  EXPECT_EQ(wit.subgroup.num_vertices(), 1);
  EXPECT_EQ(wit.subgroup.edges().size(), 2u);
  ASSERT_EQ(wit.generators.size(), 2u);
  std::set<std::string> gens = {print_word(wit.generators[0]),
                                print_word(wit.generators[1])};
  EXPECT_EQ(gens, (std::set<std::string>{"x", "y"}));
}

TEST(AkScan, MatchesPrimitivityAndInnerProducts) {
  PhiContext ctx;
  Word w = W("xyXY", 2);
  struct Case {
    std::vector<int> alpha;
    std::size_t crit;
  };
  std::vector<Case> cases = {
      {{1}, 1}, {{2}, 3}, {{0, 1}, 1}, {{1, 1}, 4}};
  for (const Case& c : cases) {
    AkReport r = chi_ak_max(w, c.alpha, ctx);
    ASSERT_TRUE(r.chi_ak_max.has_value());
    EXPECT_EQ(*r.chi_ak_max, -1);
    EXPECT_EQ(r.critical.size(), c.crit);
    // the witness count factors through the word's own critical count
    Rat inner = inner_with_xi1_minus_1(c.alpha);
    EXPECT_EQ(Rat(long(r.critical.size())), inner * Rat(1));
  }

  AkReport prim = chi_ak_max(W("xy", 2), {1}, ctx);
  EXPECT_FALSE(prim.chi_ak_max.has_value());
  EXPECT_TRUE(prim.critical.empty());
  AkReport prim2 = chi_ak_max(W("x", 2), {1, 1}, ctx);
  EXPECT_FALSE(prim2.chi_ak_max.has_value());
}

TEST(AkScan, RejectsBadInput) {
  PhiContext ctx;
  EXPECT_THROW(chi_ak_max(W("x^2", 1), {1}, ctx), internal_error);
  EXPECT_THROW(chi_ak_max(Word{2, {}}, {1}, ctx), internal_error);
  EXPECT_THROW(chi_ak_max(W("xy", 2), {0, 0}, ctx), internal_error);
  EXPECT_THROW(chi_ak_max(W("xy", 2), {}, ctx), internal_error);
}

TEST(Expectation, FlagshipCommutatorReport) {
  PhiContext ctx;
  ExpectationReport r = expectation(W("xyXY", 2), {1, 1}, ctx);
  EXPECT_EQ(print_word(r.root), "xyXY");
  EXPECT_EQ(r.root_exponent, 1);
  EXPECT_EQ(r.root_alpha, (std::vector<int>{1, 1}));
  ASSERT_TRUE(r.pi.has_value());
  EXPECT_EQ(*r.pi, 2);
  EXPECT_EQ(r.crit_count, 1u);
  EXPECT_EQ(r.e_unif, Rat(3));
  EXPECT_EQ(r.c_const, Rat(4));

  RatFn expect = RatFn::integer(3) +
                 RatFn(Poly({-4, -52, 92, -36, 4}),
                       Poly({0, 30, -61, 41, -11, 1}), 1);
  EXPECT_EQ(r.value.num(), expect.num());
  EXPECT_EQ(r.value.den(), expect.den());
  EXPECT_EQ(r.value.n_min(), 6);
  EXPECT_EQ(r.value.at(6), Rat(371, 90));
  EXPECT_EQ(r.value.at(7), Rat(1609, 420));
  EXPECT_EQ(r.value.at(8), Rat(103, 28));
}

TEST(Expectation, PowerWordsRewriteOntoTheRoot) {
  PhiContext ctx;

  ExpectationReport conj = expectation(W("Yxxy", 2), {1}, ctx);
  EXPECT_EQ(print_word(conj.root), "x");
  EXPECT_EQ(conj.root_exponent, 2);
  EXPECT_EQ(conj.root_alpha, (std::vector<int>{0, 1}));
  EXPECT_EQ(conj.value.num(), Poly({2}));
  EXPECT_EQ(conj.value.den(), Poly({1}));
  EXPECT_EQ(conj.value.n_min(), 2);
  EXPECT_FALSE(conj.pi.has_value());
  EXPECT_EQ(conj.crit_count, 0u);

  ExpectationReport cube = expectation(W("x^3", 1), {0, 1}, ctx);
  EXPECT_EQ(cube.root_exponent, 3);
  EXPECT_EQ(cube.root_alpha, (std::vector<int>{0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(cube.value.num(), Poly({4}));
  EXPECT_EQ(cube.value.den(), Poly({1}));
  EXPECT_EQ(cube.value.n_min(), 6);
  EXPECT_EQ(cube.e_unif, Rat(4));

  // E of the fixed-point count of a generator power is the divisor count
  for (int m = 1; m <= 6; ++m) {
    ExpectationReport r = expectation(W("x^" + std::to_string(m), 1), {1}, ctx);
    EXPECT_EQ(r.value.num(), Poly({tau(m)})) << m;
    EXPECT_EQ(r.value.den(), Poly({1})) << m;
    EXPECT_EQ(r.value.n_min(), m) << m;
    EXPECT_EQ(r.e_unif, Rat(tau(m))) << m;
  }
}

TEST(Expectation, LeadingTermsFollowTheCriticalCount) {
  PhiContext ctx;
  struct Case {
    const char* text;
    int rank;
    std::vector<int> alpha;
  };
  // non-power roots with a finite rank
  for (const Case& c : std::vector<Case>{{"xyXY", 2, {1, 1}},
                                         {"xyXY", 2, {1}},
                                         {"xyXY", 2, {0, 1}}}) {
    ExpectationReport r = expectation(W(c.text, c.rank), c.alpha, ctx);
    ASSERT_TRUE(r.pi.has_value());
    LaurentTail lt = laurent(r.value, *r.pi);
    EXPECT_EQ(lt.lead_exp, 0);
    EXPECT_EQ(lt.coeffs[0], r.e_unif);
    for (int p = 1; p + 1 < *r.pi; ++p) EXPECT_EQ(lt.coeffs[p], Rat(0));
    EXPECT_EQ(lt.coeffs[*r.pi - 1], r.c_const * Rat(long(r.crit_count)));
  }

  // primitive roots are flat: the expectation is already the limit value
  for (const Case& c : std::vector<Case>{{"xy", 2, {2}},
                                         {"x", 2, {1}},
                                         {"yxY", 2, {1, 1}}}) {
    ExpectationReport r = expectation(W(c.text, c.rank), c.alpha, ctx);
    EXPECT_FALSE(r.pi.has_value());
    EXPECT_EQ(r.value.den(), Poly({1}));
    EXPECT_EQ(r.value.num().degree(), 0);
    EXPECT_EQ(r.value.at(r.value.n_min()), r.e_unif);
  }

  // the limit value is approached from above on the exact range
  for (const Case& c : std::vector<Case>{{"xyXY", 2, {1, 1}},
                                         {"xyXY", 2, {1}},
                                         {"x^4", 1, {1}}}) {
    ExpectationReport r = expectation(W(c.text, c.rank), c.alpha, ctx);
    for (long n = r.value.n_min(); n < r.value.n_min() + 6; ++n)
      EXPECT_GE(r.value.at(n), r.e_unif) << c.text << " at " << n;
  }
}

TEST(Expectation, RejectsBadInput) {
  PhiContext ctx;
  EXPECT_THROW(expectation(Word{2, {}}, {1}, ctx), internal_error);
  EXPECT_THROW(expectation(W("xy", 2), {}, ctx), internal_error);
  EXPECT_THROW(expectation(W("xy", 2), {0, 0}, ctx), internal_error);
}

TEST(EUnif, MatchesPoissonMoments) {
  EXPECT_EQ(e_unif_monomial({1, 1}), Rat(3));
  EXPECT_EQ(e_unif_monomial({0, 1}), Rat(2));
  EXPECT_EQ(e_unif_monomial({2}), Rat(2));
  EXPECT_EQ(e_unif_monomial({3}), Rat(5));
  EXPECT_EQ(e_unif_monomial({1}), Rat(1));
  for (int d = 1; d <= 6; ++d) {
    std::vector<int> alpha(d, 0);
    alpha[d - 1] = 1;
    EXPECT_EQ(e_unif_monomial(alpha), Rat(tau(d))) << d;
    EXPECT_EQ(inner_with_xi1_minus_1(alpha), Rat(1)) << d;
  }
  EXPECT_EQ(inner_with_xi1_minus_1({1, 1}), Rat(4));
  EXPECT_EQ(inner_with_xi1_minus_1({2}), Rat(3));
  EXPECT_EQ(inner_with_xi1_minus_1({3}), Rat(10));

  // both combinatorial sums against the independent moment route
  ClassFun one = ClassFun::one();
  ClassFun probe = ClassFun::xi(1) - one;
  for (int k = 1; k <= 8; ++k)
    for (const IntPartition& mu : partitions_of(k)) {
      std::vector<int> alpha = alpha_of(mu);
      ClassFun mono = ClassFun::monomial(alpha);
      EXPECT_EQ(e_unif_monomial(alpha), stable_inner(mono, one)) << k;
      EXPECT_EQ(inner_with_xi1_minus_1(alpha), stable_inner(mono, probe)) << k;
    }

  EXPECT_THROW(e_unif_monomial({-1}), internal_error);
}

TEST(Conjugacy, DecisionAndEvidence) {
  ConjugacyReport r1 = decide_conjugate(W("xy", 2), W("yx", 2));
  EXPECT_TRUE(r1.conjugate);
  EXPECT_TRUE(r1.roots_conjugate);
  EXPECT_EQ(r1.exp_u, 1);
  EXPECT_EQ(r1.exp_v, 1);
  EXPECT_EQ(r1.paired_cycle_count, 1);
  EXPECT_EQ(r1.joint_cycle_count, 1);

  ConjugacyReport r2 = decide_conjugate(W("x^2", 1), W("x^3", 1));
  EXPECT_FALSE(r2.conjugate);
  EXPECT_TRUE(r2.roots_conjugate);
  EXPECT_EQ(r2.exp_u, 2);
  EXPECT_EQ(r2.exp_v, 3);
  EXPECT_EQ(r2.paired_cycle_count, tau(2) * tau(3));
  EXPECT_EQ(r2.joint_cycle_count, 1);

  ConjugacyReport r3 = decide_conjugate(W("xyXY", 2), W("yXYx", 2));
  EXPECT_TRUE(r3.conjugate);
  EXPECT_EQ(r3.paired_cycle_count, 1);
  EXPECT_EQ(r3.joint_cycle_count, 1);

  ConjugacyReport r4 = decide_conjugate(W("xyxy", 2), W("yxyx", 2));
  EXPECT_TRUE(r4.conjugate);
  // roots come out of the canonical rotation, so both read xy
  EXPECT_EQ(print_word(r4.root_u), "xy");
  EXPECT_EQ(print_word(r4.root_v), "xy");
  EXPECT_EQ(r4.paired_cycle_count, 4);
  EXPECT_EQ(r4.joint_cycle_count, 3);

  ConjugacyReport r5 = decide_conjugate(W("x", 2), W("y", 2));
  EXPECT_FALSE(r5.conjugate);
  EXPECT_FALSE(r5.roots_conjugate);
  EXPECT_EQ(r5.paired_cycle_count, 0);
  EXPECT_EQ(r5.joint_cycle_count, 0);

  EXPECT_TRUE(decide_conjugate(W("x", 2), W("Yxy", 2)).conjugate);
  EXPECT_TRUE(decide_conjugate(W("xX", 2), W("yY", 2)).conjugate);
  EXPECT_FALSE(decide_conjugate(W("xX", 2), W("x", 2)).conjugate);

  EXPECT_THROW(decide_conjugate(W("x", 1), W("x", 2)), internal_error);
}

TEST(Conjugacy, AgreesWithNaiveRotationSearch) {
  std::vector<Word> pool;
  for (int len = 1; len <= 3; ++len) {
    std::vector<Word> batch = enumerate_cyclically_reduced(2, len);
    pool.insert(pool.end(), batch.begin(), batch.end());
  }
  ASSERT_EQ(pool.size(), 4u + 12u + 28u);
  for (const Word& u : pool)
    for (const Word& v : pool)
      EXPECT_EQ(decide_conjugate(u, v).conjugate, naive_rotation_conjugate(u, v))
          << print_word(u) << " vs " << print_word(v);
}

}  // namespace
}  // namespace wm
