#pragma once

#include <map>
#include <string>
#include <vector>

#include "wm/ratfn.hpp"

namespace wm {

// Partition of an integer, parts weakly decreasing, no zero parts.
using IntPartition = std::vector<int>;
std::vector<IntPartition> partitions_of(int n);
long long z_of(const IntPartition& mu);  // prod r^{m_r} m_r!

// Element of the stable class-function ring: a polynomial in either the
// fixed-point power stats xi_1, xi_2, ... (xi_k(s) = #fix(s^k)) or the
// cycle-count stats a_1, a_2, ... (a_t(s) = #t-cycles of s).  Sparse:
// exponent vector (trailing zeros trimmed) -> rational coefficient.
enum class Basis { xi, a };

struct ClassFun {
  Basis basis = Basis::xi;
  std::map<std::vector<int>, Rat> terms;

  static ClassFun zero(Basis b = Basis::xi);
  static ClassFun one(Basis b = Basis::xi);
  static ClassFun constant(const Rat& c, Basis b = Basis::xi);
  static ClassFun xi(int k);              // single stat, xi basis
  static ClassFun a(int t);               // single stat, a basis
  static ClassFun monomial(const std::vector<int>& xi_exponents);

  bool operator==(const ClassFun&) const = default;
};

ClassFun operator+(const ClassFun& f, const ClassFun& g);
ClassFun operator-(const ClassFun& f, const ClassFun& g);
ClassFun operator*(const ClassFun& f, const ClassFun& g);
ClassFun operator*(const Rat& c, const ClassFun& f);
ClassFun pow(const ClassFun& f, int e);

// Change of basis: xi_k = sum_{t | k} t a_t, inverted Moebius-style.
ClassFun to_basis(const ClassFun& f, Basis b);

// Largest k with some xi_k (resp. a_k) occurring, and the weight
// max over monomials of sum_k k * exponent_k.  Weight bounds the symmetric
// group size where stabilization happens.
int top_index(const ClassFun& f);
int weight(const ClassFun& f);

// <f g, 1> over the stable range, via joint moments of independent
// Poisson(1/t) cycle counts.  Exact: equals the S_N average whenever
// N >= weight(f) + weight(g).
Rat stable_inner(const ClassFun& f, const ClassFun& g);

// Average of f over all of S_n, by summing over cycle types.  Exact.
Rat symmetric_group_average(const ClassFun& f, int n);

// Irreducible character value chi^lambda(mu), |lambda| = |mu|, by the
// Murnaghan-Nakayama border-strip recursion (memoized).
long long mn_character(const IntPartition& lambda, const IntPartition& mu);

// The stable irreducible family attached to lambda, as a class function:
// evaluating it on S_N (N large) gives the character of the irreducible
// indexed by (N - |lambda|, lambda).  Returned in the a basis.
ClassFun stable_irreducible(const IntPartition& lambda);

// Dimension of that irreducible as a polynomial in N: substitute N for
// every xi_k.  Integer-valued; returned as numerator / constant denominator.
RatFn dimension_poly(const IntPartition& lambda);

// Expansion of f in the stable irreducible family: pairs (lambda, coeff),
// all lambda with |lambda| <= weight(f) and nonzero coefficient.
std::vector<std::pair<IntPartition, Rat>> decompose_irreducible(const ClassFun& f);

// Number of fixed s-tuples of distinct points: xi_1 (xi_1 - 1) ... (xi_1-s+1).
ClassFun fixed_tuples_character(int s);

// Expression text -> class function.  Atoms: xi<k>, a<t>, integer and p/q
// literals; operators + - * ^ and parentheses.  Throws parse_error.  An
// expression whose stats are all a_t comes back in the a basis.
ClassFun parse_class_function(const std::string& text);
std::string to_string(const ClassFun& f);

}  // namespace wm
