#include "wm/ratfn.hpp"

#include <algorithm>
#include <sstream>

#include "wm/errors.hpp"

namespace wm {

namespace {

void normalize(std::vector<Int>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Int content(const Poly& p) {
  Int g = 0;
  for (const Int& a : p.c) g = boost::multiprecision::gcd(g, a);
  return g;
}

Poly divide_by_int(const Poly& p, const Int& k) {
  Poly out = p;
  for (Int& a : out.c) {
    if (a % k != 0) throw internal_error("inexact integer division of polynomial");
    a /= k;
  }
  return out;
}

// remainder of a * lead(b)^(deg a - deg b + 1) by b (fraction-free)
Poly pseudo_rem(Poly a, const Poly& b) {
  if (b.is_zero()) throw internal_error("pseudo-remainder by zero");
  const Int& lb = b.leading();
  while (!a.is_zero() && a.degree() >= b.degree()) {
    int shift = a.degree() - b.degree();
    Int la = a.leading();
    for (Int& x : a.c) x *= lb;
    for (int i = 0; i <= b.degree(); ++i) a.c[i + shift] -= la * b.c[i];
    normalize(a.c);
  }
  return a;
}

}  // namespace

Poly::Poly(std::initializer_list<long long> v) {
  for (long long x : v) c.emplace_back(x);
  normalize(c);
}

Poly Poly::constant(const Int& a) {
  Poly p;
  if (a != 0) p.c.push_back(a);
  return p;
}

Poly Poly::var() {
  Poly p;
  p.c = {Int(0), Int(1)};
  return p;
}

Int Poly::at(const Int& x) const {
  Int v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out;
  out.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < out.c.size(); ++i) {
    if (i < a.c.size()) out.c[i] += a.c[i];
    if (i < b.c.size()) out.c[i] += b.c[i];
  }
  normalize(out.c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly out;
  out.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < out.c.size(); ++i) {
    if (i < a.c.size()) out.c[i] += a.c[i];
    if (i < b.c.size()) out.c[i] -= b.c[i];
  }
  normalize(out.c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly out;
  out.c.assign(a.c.size() + b.c.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  return out;
}

Poly operator*(const Int& k, const Poly& a) {
  if (k == 0) return {};
  Poly out = a;
  for (Int& x : out.c) x *= k;
  return out;
}

PolyDiv divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw internal_error("polynomial division by zero");
  PolyDiv d;
  Poly rem = a;
  if (rem.degree() >= b.degree())
    d.quot.c.assign(rem.degree() - b.degree() + 1, Int(0));
  const Int& lb = b.leading();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    if (rem.leading() % lb != 0)
      throw internal_error("inexact polynomial division");
    Int q = rem.leading() / lb;
    d.quot.c[shift] = q;
    for (int i = 0; i <= b.degree(); ++i) rem.c[i + shift] -= q * b.c[i];
    normalize(rem.c);
  }
  normalize(d.quot.c);
  d.rem = rem;
  return d;
}

Poly gcd(Poly a, Poly b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) std::swap(a, b);
  if (b.is_zero()) {
    Poly g = divide_by_int(a, content(a));
    if (g.leading() < 0) g = Int(-1) * g;
    return g;
  }
  // primitive polynomial remainder sequence
  a = divide_by_int(a, content(a));
  b = divide_by_int(b, content(b));
  while (!b.is_zero()) {
    Poly r = pseudo_rem(a, b);
    if (!r.is_zero()) r = divide_by_int(r, content(r));
    a = std::move(b);
    b = std::move(r);
  }
  if (a.leading() < 0) a = Int(-1) * a;
  return a;
}

Poly falling_factorial(int k) {
  Poly out = Poly::constant(1);
  for (int i = 0; i < k; ++i) out = out * (Poly::var() - Poly::constant(i));
  return out;
}

std::string to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = p.degree(); d >= 0; --d) {
    const Int& a = p.c[d];
    if (a == 0) continue;
    Int mag = a < 0 ? Int(-a) : a;
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (mag != 1 || d == 0) os << mag;
    if (d >= 1) {
      os << var;
      if (d >= 2) os << "^" << d;
    }
  }
  return os.str();
}

long largest_nonneg_integer_root(const Poly& p) {
  if (p.is_zero()) throw internal_error("root scan of the zero polynomial");
  long best = -1;
  for (long n = 0; n <= 1024; ++n)
    if (p.at(Int(n)) == 0) best = n;
  return best;
}

RatFn::RatFn(Poly num, Poly den, long n_min) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw internal_error("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
  } else {
    Poly g = gcd(num_, den_);
    Int cn = content(num_), cd = content(den_);
    Int cg = boost::multiprecision::gcd(cn, cd);
    g = (cg == 0 ? Int(1) : cg) * g;
    if (!(g.degree() == 0 && g.c[0] == 1)) {
      num_ = divide(num_, g).quot;
      den_ = divide(den_, g).quot;
    }
    if (den_.leading() < 0) {
      num_ = Int(-1) * num_;
      den_ = Int(-1) * den_;
    }
  }
  n_min_ = std::max(n_min, 0L);
  if (den_.degree() >= 1)
    n_min_ = std::max(n_min_, largest_nonneg_integer_root(den_) + 1);
}

RatFn RatFn::constant(const Rat& a) {
  return RatFn(Poly::constant(boost::multiprecision::numerator(a)),
               Poly::constant(boost::multiprecision::denominator(a)), 0);
}

RatFn RatFn::integer(long long a) {
  return RatFn(Poly::constant(Int(a)), Poly::constant(1), 0);
}

Rat RatFn::at(long n) const {
  Int d = den_.at(Int(n));
  if (d == 0) throw internal_error("evaluation at a pole");
  return Rat(num_.at(Int(n)), d);
}

void RatFn::raise_n_min(long n) { n_min_ = std::max(n_min_, n); }

RatFn operator+(const RatFn& a, const RatFn& b) {
  return RatFn(a.num() * b.den() + b.num() * a.den(), a.den() * b.den(),
               std::max(a.n_min(), b.n_min()));
}

RatFn operator-(const RatFn& a, const RatFn& b) {
  return RatFn(a.num() * b.den() - b.num() * a.den(), a.den() * b.den(),
               std::max(a.n_min(), b.n_min()));
}

RatFn operator*(const RatFn& a, const RatFn& b) {
  return RatFn(a.num() * b.num(), a.den() * b.den(),
               std::max(a.n_min(), b.n_min()));
}

RatFn operator/(const RatFn& a, const RatFn& b) {
  if (b.is_zero()) throw internal_error("division of rational functions by zero");
  return RatFn(a.num() * b.den(), a.den() * b.num(),
               std::max(a.n_min(), b.n_min()));
}

std::string to_string(const RatFn& f) {
  if (f.den().degree() == 0 && f.den().c[0] == 1) return to_string(f.num());
  std::string num = to_string(f.num());
  // parenthesize sums, not single terms
  if (num.find(' ') != std::string::npos) num = "(" + num + ")";
  std::ostringstream os;
  os << num << " / (" << to_string(f.den()) << ")";
  return os.str();
}

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::string rat_poly_str(const std::vector<Rat>& c) {
  // low-first rational coefficients
  int deg = int(c.size()) - 1;
  while (deg >= 0 && c[deg] == 0) --deg;
  if (deg < 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = deg; d >= 0; --d) {
    if (c[d] == 0) continue;
    Rat mag = c[d] < 0 ? Rat(-c[d]) : c[d];
    if (first) {
      if (c[d] < 0) os << "-";
      first = false;
    } else {
      os << (c[d] < 0 ? " - " : " + ");
    }
    if (mag != 1 || d == 0) os << rat_str(mag);
    if (d >= 1) {
      if (mag != 1) os << "*";
      os << "N";
      if (d >= 2) os << "^" << d;
    }
  }
  return os.str();
}

}  // namespace

std::string to_split_string(const RatFn& f) {
  if (f.den().degree() == 0) {
    std::vector<Rat> q(f.num().c.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      q[i] = Rat(f.num().c[i], f.den().c[0]);
    return rat_poly_str(q);
  }
  // rational long division: num = q * den + r with deg r < deg den
  std::vector<Rat> rem(f.num().c.size());
  for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = f.num().c[i];
  int dn = int(rem.size()) - 1, dd = f.den().degree();
  std::vector<Rat> quot(std::max(0, dn - dd + 1), Rat(0));
  Rat lead(f.den().leading());
  for (int d = dn; d >= dd; --d) {
    if (rem[d] == 0) continue;
    Rat q = rem[d] / lead;
    quot[d - dd] = q;
    for (int i = 0; i <= dd; ++i) rem[d - dd + i] -= q * Rat(f.den().c[i]);
  }
  bool rem_zero = std::all_of(rem.begin(), rem.end(),
                              [](const Rat& r) { return r == 0; });
  std::string qs = rat_poly_str(quot);
  if (rem_zero) return qs;
  // clear denominators in the remainder for display
  Int mult = 1;
  for (int i = 0; i < dd; ++i)
    mult = boost::multiprecision::lcm(mult, boost::multiprecision::denominator(rem[i]));
  Poly rp;
  rp.c.resize(dd);
  for (int i = 0; i < dd; ++i)
    rp.c[i] = boost::multiprecision::numerator(rem[i] * Rat(mult));
  normalize(rp.c);
  std::ostringstream os;
  if (qs != "0") os << qs << " + ";
  std::string rs = to_string(rp);
  if (rs.find(' ') != std::string::npos) rs = "(" + rs + ")";
  os << rs << " / (";
  if (mult != 1) os << "(" << mult << ")*";
  os << to_string(f.den()) << ")";
  return os.str();
}

LaurentTail laurent(const RatFn& f, int order) {
  LaurentTail t;
  t.coeffs.assign(order + 1, Rat(0));
  if (f.is_zero()) return t;
  int dn = f.num().degree(), dd = f.den().degree();
  t.lead_exp = dn - dd;
  // reversed polynomials are power series in x = 1/N
  auto rev = [](const Poly& p) {
    std::vector<Rat> out(p.c.size());
    for (int i = 0; i <= p.degree(); ++i) out[i] = p.c[p.degree() - i];
    return out;
  };
  std::vector<Rat> pn = rev(f.num()), pd = rev(f.den());
  for (int k = 0; k <= order; ++k) {
    Rat acc = k < int(pn.size()) ? pn[k] : Rat(0);
    for (int j = 0; j < k; ++j) {
      int i = k - j;
      if (i < int(pd.size())) acc -= t.coeffs[j] * pd[i];
    }
    t.coeffs[k] = acc / pd[0];
  }
  return t;
}

std::string to_string(const LaurentTail& t) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t p = 0; p < t.coeffs.size(); ++p) {
    if (t.coeffs[p] == 0) continue;
    long e = t.lead_exp - long(p);
    Rat mag = t.coeffs[p] < 0 ? Rat(-t.coeffs[p]) : t.coeffs[p];
    if (first) {
      if (t.coeffs[p] < 0) os << "-";
      first = false;
    } else {
      os << (t.coeffs[p] < 0 ? " - " : " + ");
    }
    if (mag != 1 || e == 0) os << rat_str(mag);
    if (e != 0) {
      if (mag != 1) os << "*";
      os << "N^" << e;
    }
  }
  if (first) os << "0";
  os << " + O(N^" << (t.lead_exp - long(t.coeffs.size())) << ")";
  return os.str();
}

}  // namespace wm
