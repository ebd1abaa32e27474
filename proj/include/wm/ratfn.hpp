#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace wm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Dense integer polynomial, coefficients low degree first.  The zero
// polynomial is the empty vector.  Always normalized (no trailing zeros).
struct Poly {
  std::vector<Int> c;

  Poly() = default;
  Poly(std::initializer_list<long long> v);
  static Poly constant(const Int& a);
  static Poly var();  // N

  int degree() const { return int(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  Int at(const Int& x) const;
  Int leading() const { return c.empty() ? Int(0) : c.back(); }
  bool operator==(const Poly&) const = default;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Int& k, const Poly& a);
// Quotient and remainder over the rationals; only valid when the division
// is exact over the integers for our callers' inputs -- asserted.
struct PolyDiv {
  Poly quot;
  Poly rem;
};
PolyDiv divide(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);        // primitive, positive leading coefficient
Poly falling_factorial(int k);   // N(N-1)...(N-k+1)
std::string to_string(const Poly& p, const std::string& var = "N");

// Ratio of integer polynomials in the symbol N, reduced, denominator with
// positive leading coefficient, plus the smallest integer N from which the
// expression is known to equal the quantity it denotes.  Arithmetic keeps
// the max of the operands' thresholds (and never drops below one past the
// largest nonnegative integer root of the reduced denominator).
class RatFn {
 public:
  RatFn() : num_(), den_(Poly::constant(1)), n_min_(0) {}
  RatFn(Poly num, Poly den, long n_min = 0);
  static RatFn constant(const Rat& a);
  static RatFn integer(long long a);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  long n_min() const { return n_min_; }
  bool is_zero() const { return num_.is_zero(); }

  Rat at(long n) const;  // throws internal_error on a pole
  void raise_n_min(long n);

  bool operator==(const RatFn&) const = default;

 private:
  Poly num_, den_;
  long n_min_ = 0;
};

RatFn operator+(const RatFn& a, const RatFn& b);
RatFn operator-(const RatFn& a, const RatFn& b);
RatFn operator*(const RatFn& a, const RatFn& b);
RatFn operator/(const RatFn& a, const RatFn& b);

std::string to_string(const RatFn& f);
// "q(N) + r(N)/den(N)" form when deg num >= deg den; exact.
std::string to_split_string(const RatFn& f);

long largest_nonneg_integer_root(const Poly& p);

// Truncated expansion around N = infinity:
//   f = sum_{p>=0} coeff[p] N^{lead_exp - p},  p <= order.
struct LaurentTail {
  long lead_exp = 0;
  std::vector<Rat> coeffs;  // coeffs[p] multiplies N^(lead_exp - p)
};
LaurentTail laurent(const RatFn& f, int order);
std::string to_string(const LaurentTail& t);

}  // namespace wm
