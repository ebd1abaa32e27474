#include "wm/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "wm/errors.hpp"
#include "wm/graphs.hpp"
#include "wm/phi.hpp"
#include "wm/ratfn.hpp"
#include "wm/words.hpp"

namespace wm {
namespace {

Word W(const std::string& text, int rank) { return parse_word(text, rank); }

CyclicWord cyc(const std::string& text, int rank) {
  return cyclic_reduce(parse_word(text, rank)).cyclic;
}

Morphism to_bouquet(const CoreGraph& g) {
  return make_morphism(g, bouquet(g.rank()),
                       std::vector<int>(g.num_vertices(), 0));
}

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

TEST(Perm, BasicOperations) {
  EXPECT_EQ(perm_identity(3), (Perm{0, 1, 2}));

  Perm a = {1, 0, 2};  // swap first two
  Perm b = {0, 2, 1};  // swap last two
  // (a*b)(i) = a(b(i))
  EXPECT_EQ(perm_compose(a, b), (Perm{1, 2, 0}));
  EXPECT_EQ(perm_compose(b, a), (Perm{2, 0, 1}));

  EXPECT_EQ(cycle_type(perm_identity(4)), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(cycle_type({1, 0, 3, 2}), (std::vector<int>{2, 2}));
  EXPECT_EQ(cycle_type({1, 2, 0, 3}), (std::vector<int>{3, 1}));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + int(rng() % 8);
    Perm p = perm_identity(n);
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_EQ(perm_compose(p, perm_inverse(p)), perm_identity(n));
    EXPECT_EQ(perm_compose(perm_inverse(p), p), perm_identity(n));
    int total = 0;
    for (int c : cycle_type(p)) total += c;
    EXPECT_EQ(total, n);
  }
}

TEST(Perm, WordEvaluation) {
  Perm a = {1, 0, 2};
  Perm b = {0, 2, 1};
  std::vector<Perm> gens = {a, b};

  EXPECT_EQ(evaluate_word(W("xy", 2), gens), perm_compose(a, b));
  EXPECT_EQ(evaluate_word(W("yx", 2), gens), perm_compose(b, a));
  EXPECT_EQ(evaluate_word(W("X", 2), gens), perm_inverse(a));
  EXPECT_EQ(evaluate_word(Word{2, {}}, gens), perm_identity(3));
  EXPECT_EQ(evaluate_word(W("xX", 2), gens), perm_identity(3));

  Perm comm = evaluate_word(W("xyXY", 2), gens);
  Perm direct = perm_compose(
      perm_compose(a, b), perm_compose(perm_inverse(a), perm_inverse(b)));
  EXPECT_EQ(comm, direct);

  EXPECT_THROW(evaluate_word(W("x", 1), gens), internal_error);
}

TEST(Eval, ClassFunctionOnPermutations) {
  EXPECT_EQ(eval_class_function(ClassFun::xi(1), perm_identity(5)), Rat(5));
  // a transposition squares to the identity
  EXPECT_EQ(eval_class_function(ClassFun::xi(2), {1, 0, 2}), Rat(3));
  EXPECT_EQ(eval_class_function(ClassFun::a(2), {1, 0, 3, 2}), Rat(2));

  Perm four = {1, 2, 3, 0};
  EXPECT_EQ(eval_class_function(ClassFun::xi(1), four), Rat(0));
  EXPECT_EQ(eval_class_function(ClassFun::xi(2), four), Rat(0));
  EXPECT_EQ(eval_class_function(ClassFun::xi(4), four), Rat(4));
  EXPECT_EQ(eval_class_function(ClassFun::constant(Rat(7, 3)), four),
            Rat(7, 3));

  // xi1*xi2 on a transposition with two fixed points
  Perm t4 = {1, 0, 2, 3};
  EXPECT_EQ(eval_class_function(ClassFun::monomial({1, 1}), t4), Rat(8));

  // evaluation commutes with the change of basis
  std::mt19937 rng(5);
  std::vector<ClassFun> fs = {
      ClassFun::monomial({2, 1}),
      ClassFun::xi(3) - Rat(2) * ClassFun::xi(1),
      ClassFun::a(1) * ClassFun::a(2),
  };
  for (int trial = 0; trial < 20; ++trial) {
    Perm p = perm_identity(6);
    std::shuffle(p.begin(), p.end(), rng);
    for (const ClassFun& f : fs) {
      Basis other = f.basis == Basis::xi ? Basis::a : Basis::xi;
      EXPECT_EQ(eval_class_function(to_basis(f, other), p),
                eval_class_function(f, p));
    }
  }
}

TEST(Exact, SmallClosedForms) {
  EXPECT_EQ(exact_expectation(W("x^2", 1), ClassFun::xi(1), 3), Rat(2));
  EXPECT_EQ(exact_expectation(W("x", 1), ClassFun::xi(1), 4), Rat(1));

  // a uniform generator averages like the whole group
  for (int n = 2; n <= 5; ++n) {
    ClassFun f = ClassFun::monomial({1, 1});
    EXPECT_EQ(exact_expectation(W("x", 1), f, n),
              symmetric_group_average(f, n));
  }

  // the commutator joint moment, evaluated at the first exact N
  Rat flagship =
      exact_expectation(W("xyXY", 2), ClassFun::monomial({1, 1}), 6);
  EXPECT_EQ(flagship, Rat(371, 90));

  // denominators divide the tuple count
  Rat v = exact_expectation(W("xyX", 2), ClassFun::xi(2), 4);
  Int den = boost::multiprecision::denominator(v);
  Int tuples = factorial(4) * factorial(4);
  EXPECT_EQ(tuples % den, 0);

  // a quick rank-3 run inside the default budget
  EXPECT_EQ(exact_expectation(W("xyz", 3), ClassFun::xi(1), 3), Rat(1));
}

TEST(Exact, AgreesWithPhiOnSmallWords) {
  PhiContext ctx;
  struct Case {
    const char* text;
    std::vector<int> alpha;
  };
  std::vector<Case> cases = {
      {"xy", {1}},   {"xy", {0, 1}}, {"xx", {1}},   {"xx", {2}},
      {"xyX", {1}},  {"xxy", {1}},   {"xxy", {0, 1}}, {"xyXY", {1}},
      {"xxyy", {1}}, {"xyxY", {1}},
  };
  for (const Case& c : cases) {
    Morphism eta = to_bouquet(powers_graph(cyc(c.text, 2), c.alpha));
    RatFn phi = ctx.phi(eta);
    ClassFun mono = ClassFun::monomial(c.alpha);
    long from = std::max<long>(2, phi.n_min());
    for (long n = from; n <= 5; ++n)
      EXPECT_EQ(phi.at(n), exact_expectation(W(c.text, 2), mono, int(n)))
          << c.text << " at N = " << n;
  }
}

TEST(Exact, MultisetExpectations) {
  // common fixed points of a generator with itself: second moment
  for (int n = 2; n <= 5; ++n) {
    Rat second =
        exact_expectation_multiset({W("x", 1), W("x", 1)}, 1, n);
    EXPECT_EQ(second, Rat(2)) << n;
  }
  EXPECT_EQ(exact_expectation_multiset({W("x", 1)}, 1, 4), Rat(1));
  EXPECT_EQ(exact_expectation_multiset({W("x", 2), W("y", 2)}, 2, 3), Rat(1));
  EXPECT_EQ(exact_expectation_multiset({W("xy", 2), W("x", 2)}, 2, 3), Rat(1));

  // a singleton multiset is the plain fixed-point expectation
  EXPECT_EQ(exact_expectation_multiset({W("xyXY", 2)}, 2, 4),
            exact_expectation(W("xyXY", 2), ClassFun::xi(1), 4));

  EXPECT_THROW(exact_expectation_multiset({W("x", 1)}, 2, 3), internal_error);
}

TEST(Exact, BudgetGuards) {
  ClassFun f = ClassFun::xi(1);
  EXPECT_THROW(exact_expectation(W("xy", 2), f, 7), budget_error);
  EXPECT_THROW(exact_expectation(W("xyz", 3), f, 5), budget_error);
  EXPECT_THROW(exact_expectation(W("x", 1), f, 9), budget_error);
  EXPECT_THROW(exact_expectation(W("xyza", 4), f, 4), budget_error);

  ExactBudget relaxed;
  relaxed.relax = true;
  EXPECT_EQ(exact_expectation(W("x", 1), f, 9, relaxed), Rat(1));

  ExactBudget tighter;
  tighter.max_n_rank2 = 4;
  EXPECT_THROW(exact_expectation(W("xy", 2), f, 5, tighter), budget_error);
}

TEST(MC, DeterministicStream) {
  Word w = W("xyXY", 2);
  ClassFun f = ClassFun::xi(1);
  McResult a = mc_expectation(w, f, 12, 300, 42);
  McResult b = mc_expectation(w, f, 12, 300, 42);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_, b.stderr_);
  EXPECT_EQ(a.samples, 300u);

  // constants have no sampling noise at all
  McResult c = mc_expectation(W("x", 2), ClassFun::one(), 9, 50, 1);
  EXPECT_EQ(c.mean, 1.0);
  EXPECT_EQ(c.stderr_, 0.0);
}

TEST(MC, ConcentratesOnTheExactValue) {
  // commutator fixed points at large N: limit value 1 + 1/(N-1)
  McResult big = mc_expectation(W("xyXY", 2), ClassFun::xi(1), 50, 100000, 3);
  double target = 1.0 + 1.0 / 49.0;
  EXPECT_NEAR(big.mean, target, 4 * big.stderr_);

  // against the exact oracle on a feasible instance
  Rat exact = exact_expectation(W("xxy", 2), ClassFun::xi(1), 4);
  McResult mc = mc_expectation(W("xxy", 2), ClassFun::xi(1), 4, 20000, 9);
  double ex = double(boost::multiprecision::numerator(exact)) /
              double(boost::multiprecision::denominator(exact));
  EXPECT_NEAR(mc.mean, ex, 5 * mc.stderr_);
}

TEST(Lift, ExactOnForestsAndStatisticalOnCycles) {
  // no cycle to close: every sample counts N sections
  CoreGraph dot(2, 1, {}, true);
  std::vector<Int> per;
  McResult r = lift_count_expectation(identity_morphism(dot), 7, 40, 5, &per);
  EXPECT_EQ(r.mean, 7.0);
  EXPECT_EQ(r.stderr_, 0.0);
  ASSERT_EQ(per.size(), 40u);
  for (const Int& c : per) EXPECT_EQ(c, 7);

  CoreGraph path(2, 2, {{0, 1, 0}}, true);
  McResult rp = lift_count_expectation(identity_morphism(path), 6, 40, 5);
  EXPECT_EQ(rp.mean, 6.0);
  EXPECT_EQ(rp.stderr_, 0.0);

  // identity on a cycle: holonomy is a single uniform permutation
  CoreGraph c4 = cycle_graph(cyc("xyXY", 2));
  McResult rc = lift_count_expectation(identity_morphism(c4), 9, 20000, 17);
  EXPECT_NEAR(rc.mean, 1.0, 5 * rc.stderr_);

  // the double cover of the single loop averages tau(2)
  Morphism sq = to_bouquet(cycle_graph(cyc("x^2", 1)));
  McResult rs = lift_count_expectation(sq, 10, 10000, 23);
  EXPECT_NEAR(rs.mean, 2.0, 4 * rs.stderr_);

  // rank-two bouquet identity: common fixed points of two permutations
  McResult rb = lift_count_expectation(identity_morphism(bouquet(2)), 8,
                                       40000, 29);
  EXPECT_NEAR(rb.mean, 1.0 / 8.0, 5 * rb.stderr_);
}

TEST(Lift, SharesTheSampleStreamWithWordSampling) {
  // same seed, same codomain edge order: the two estimators see the very
  // same permutations, so the means agree to the last bit
  Word w = W("xyXY", 2);
  Morphism eta = to_bouquet(cycle_graph(cyc("xyXY", 2)));
  McResult lift = lift_count_expectation(eta, 9, 500, 7);
  McResult word = mc_expectation(w, ClassFun::xi(1), 9, 500, 7);
  EXPECT_EQ(lift.mean, word.mean);
  EXPECT_EQ(lift.stderr_, word.stderr_);
}

TEST(Lift, MatchesPhiStatistically) {
  PhiContext ctx;
  Morphism eta = to_bouquet(cycle_graph(cyc("xyXY", 2)));
  RatFn phi = ctx.phi(eta);
  Rat at7 = phi.at(7);
  double target = double(boost::multiprecision::numerator(at7)) /
                  double(boost::multiprecision::denominator(at7));
  McResult r = lift_count_expectation(eta, 7, 30000, 31);
  EXPECT_NEAR(r.mean, target, 5 * r.stderr_);
}

}  // namespace
}  // namespace wm
