#include "wm/characters.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wm/errors.hpp"

namespace wm {

namespace {

void rec_partitions(int n, int maxpart, IntPartition& cur,
                    std::vector<IntPartition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    rec_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<int> multiplicities(const IntPartition& mu) {
  std::vector<int> m;
  for (int p : mu) {
    if (p <= 0) throw internal_error("partition with nonpositive part");
    if (p > int(m.size())) m.resize(p, 0);
    ++m[p - 1];
  }
  return m;
}

void trim(std::vector<int>& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

void add_term(ClassFun& f, std::vector<int> e, const Rat& c) {
  if (c == 0) return;
  trim(e);
  Rat& slot = f.terms[e];
  slot += c;
  if (slot == 0) f.terms.erase(e);
}

}  // namespace

std::vector<IntPartition> partitions_of(int n) {
  std::vector<IntPartition> out;
  IntPartition cur;
  if (n < 0) return out;
  rec_partitions(n, n == 0 ? 1 : n, cur, out);
  return out;
}

long long z_of(const IntPartition& mu) {
  long long z = 1;
  std::vector<int> m = multiplicities(mu);
  for (int r = 1; r <= int(m.size()); ++r)
    for (int i = 1; i <= m[r - 1]; ++i) z *= (long long)r * i;
  return z;
}

ClassFun ClassFun::zero(Basis b) {
  ClassFun f;
  f.basis = b;
  return f;
}

ClassFun ClassFun::one(Basis b) { return constant(Rat(1), b); }

ClassFun ClassFun::constant(const Rat& c, Basis b) {
  ClassFun f;
  f.basis = b;
  if (c != 0) f.terms[{}] = c;
  return f;
}

ClassFun ClassFun::xi(int k) {
  if (k < 1) throw internal_error("xi index must be >= 1");
  ClassFun f;
  f.basis = Basis::xi;
  std::vector<int> e(k, 0);
  e[k - 1] = 1;
  f.terms[e] = 1;
  return f;
}

ClassFun ClassFun::a(int t) {
  if (t < 1) throw internal_error("a index must be >= 1");
  ClassFun f;
  f.basis = Basis::a;
  std::vector<int> e(t, 0);
  e[t - 1] = 1;
  f.terms[e] = 1;
  return f;
}

ClassFun ClassFun::monomial(const std::vector<int>& xi_exponents) {
  ClassFun f;
  f.basis = Basis::xi;
  std::vector<int> e = xi_exponents;
  trim(e);
  for (int x : e)
    if (x < 0) throw internal_error("negative exponent in monomial");
  f.terms[e] = 1;
  return f;
}

ClassFun operator+(const ClassFun& f, const ClassFun& g) {
  ClassFun gg = (g.basis == f.basis) ? g : to_basis(g, f.basis);
  ClassFun out = f;
  for (const auto& [e, c] : gg.terms) add_term(out, e, c);
  return out;
}

ClassFun operator-(const ClassFun& f, const ClassFun& g) {
  ClassFun gg = (g.basis == f.basis) ? g : to_basis(g, f.basis);
  ClassFun out = f;
  for (const auto& [e, c] : gg.terms) add_term(out, e, -c);
  return out;
}

ClassFun operator*(const ClassFun& f, const ClassFun& g) {
  ClassFun gg = (g.basis == f.basis) ? g : to_basis(g, f.basis);
  ClassFun out = ClassFun::zero(f.basis);
  for (const auto& [e1, c1] : f.terms)
    for (const auto& [e2, c2] : gg.terms) {
      std::vector<int> e(std::max(e1.size(), e2.size()), 0);
      for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
      for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
      add_term(out, std::move(e), c1 * c2);
    }
  return out;
}

ClassFun operator*(const Rat& c, const ClassFun& f) {
  ClassFun out = ClassFun::zero(f.basis);
  for (const auto& [e, v] : f.terms) add_term(out, e, c * v);
  return out;
}

ClassFun pow(const ClassFun& f, int e) {
  if (e < 0) throw internal_error("negative power of a class function");
  ClassFun out = ClassFun::one(f.basis);
  for (int i = 0; i < e; ++i) out = out * f;
  return out;
}

namespace {

// Moebius function on divisors, small arguments.
int moebius(int n) {
  int out = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    out = -out;
  }
  if (n > 1) out = -out;
  return out;
}

}  // namespace

ClassFun to_basis(const ClassFun& f, Basis b) {
  if (f.basis == b) return f;
  ClassFun out = ClassFun::zero(b);
  for (const auto& [e, c] : f.terms) {
    ClassFun term = ClassFun::constant(c, b);
    for (int k = 1; k <= int(e.size()); ++k) {
      if (e[k - 1] == 0) continue;
      ClassFun sub = ClassFun::zero(b);
      if (b == Basis::a) {
        // xi_k = sum over t | k of t a_t
        for (int t = 1; t <= k; ++t)
          if (k % t == 0) sub = sub + Rat(t) * ClassFun::a(t);
      } else {
        // a_t = (1/t) sum over d | t of mu(t/d) xi_d
        for (int d = 1; d <= k; ++d)
          if (k % d == 0)
            sub = sub + Rat(moebius(k / d), k) * ClassFun::xi(d);
      }
      term = term * pow(sub, e[k - 1]);
    }
    out = out + term;
  }
  return out;
}

int top_index(const ClassFun& f) {
  int top = 0;
  for (const auto& [e, c] : f.terms) top = std::max(top, int(e.size()));
  return top;
}

int weight(const ClassFun& f) {
  int w = 0;
  for (const auto& [e, c] : f.terms) {
    int s = 0;
    for (int k = 1; k <= int(e.size()); ++k) s += k * e[k - 1];
    w = std::max(w, s);
  }
  return w;
}

namespace {

// E[X^e] for X ~ Poisson(lambda): sum_j S(e, j) lambda^j.
Rat poisson_moment(int e, const Rat& lambda) {
  std::vector<std::vector<Rat>> S(e + 1, std::vector<Rat>(e + 1, Rat(0)));
  S[0][0] = 1;
  for (int n = 1; n <= e; ++n)
    for (int k = 1; k <= n; ++k)
      S[n][k] = S[n - 1][k - 1] + Rat(k) * S[n - 1][k];
  Rat out = 0, lp = 1;
  for (int j = 0; j <= e; ++j) {
    if (j > 0) lp *= lambda;
    out += S[e][j] * lp;
  }
  return out;
}

}  // namespace

Rat stable_inner(const ClassFun& f, const ClassFun& g) {
  ClassFun h = to_basis(f * g, Basis::a);
  Rat out = 0;
  for (const auto& [e, c] : h.terms) {
    Rat m = c;
    for (int t = 1; t <= int(e.size()); ++t)
      if (e[t - 1] > 0) m *= poisson_moment(e[t - 1], Rat(1, t));
    out += m;
  }
  return out;
}

Rat symmetric_group_average(const ClassFun& f, int n) {
  if (n < 0) throw internal_error("average over empty group");
  Rat out = 0;
  for (const IntPartition& mu : partitions_of(n)) {
    std::vector<int> m = multiplicities(mu);
    Rat val = 0;
    for (const auto& [e, c] : f.terms) {
      Rat term = c;
      for (int k = 1; k <= int(e.size()); ++k) {
        if (e[k - 1] == 0) continue;
        long long stat = 0;
        if (f.basis == Basis::a) {
          stat = k <= int(m.size()) ? m[k - 1] : 0;
        } else {
          for (int t = 1; t <= std::min(k, int(m.size())); ++t)
            if (k % t == 0) stat += (long long)t * m[t - 1];
        }
        Rat base(stat);
        for (int i = 0; i < e[k - 1]; ++i) term *= base;
      }
      val += term;
    }
    out += val / Rat(z_of(mu));
  }
  return out;
}

namespace {

// beta-set representation: strictly decreasing nonnegative integers
std::vector<int> beta_set(const IntPartition& lambda) {
  int k = int(lambda.size());
  std::vector<int> b(k);
  for (int i = 0; i < k; ++i) b[i] = lambda[i] + (k - 1 - i);
  return b;
}

IntPartition from_beta(std::vector<int> b) {
  std::sort(b.rbegin(), b.rend());
  IntPartition out;
  int k = int(b.size());
  for (int i = 0; i < k; ++i) {
    int part = b[i] - (k - 1 - i);
    if (part > 0) out.push_back(part);
  }
  return out;
}

std::map<std::pair<IntPartition, IntPartition>, long long> mn_memo;

}  // namespace

long long mn_character(const IntPartition& lambda, const IntPartition& mu) {
  int sl = 0, sm = 0;
  for (int p : lambda) sl += p;
  for (int p : mu) sm += p;
  if (sl != sm) throw internal_error("character of mismatched sizes");
  if (sl == 0) return 1;
  auto key = std::make_pair(lambda, mu);
  auto it = mn_memo.find(key);
  if (it != mn_memo.end()) return it->second;
  // remove one border strip of length mu[0]
  int r = mu[0];
  IntPartition rest(mu.begin() + 1, mu.end());
  std::vector<int> b = beta_set(lambda);
  long long total = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    int nb = b[i] - r;
    if (nb < 0) continue;
    if (std::find(b.begin(), b.end(), nb) != b.end()) continue;
    int crossings = 0;  // beta values strictly between nb and b[i]
    for (int x : b)
      if (x > nb && x < b[i]) ++crossings;
    std::vector<int> b2 = b;
    b2[i] = nb;
    long long sub = mn_character(from_beta(std::move(b2)), rest);
    total += (crossings % 2 ? -1 : 1) * sub;
  }
  mn_memo[key] = total;
  return total;
}

namespace {

// binom(a_r, m) = a_r (a_r - 1) ... (a_r - m + 1) / m!
ClassFun binom_stat(int r, int m) {
  ClassFun out = ClassFun::one(Basis::a);
  Rat fact = 1;
  for (int i = 0; i < m; ++i) {
    out = out * (ClassFun::a(r) - ClassFun::constant(Rat(i), Basis::a));
    fact *= Rat(i + 1);
  }
  return Rat(1) / fact * out;
}

IntPartition merge_parts(const IntPartition& x, const IntPartition& y) {
  IntPartition out = x;
  out.insert(out.end(), y.begin(), y.end());
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

ClassFun stable_irreducible(const IntPartition& lambda) {
  int k = 0;
  for (int p : lambda) k += p;
  ClassFun out = ClassFun::zero(Basis::a);
  for (int i = 0; i <= k; ++i) {
    for (const IntPartition& rho : partitions_of(i))
      for (const IntPartition& sig : partitions_of(k - i)) {
        long long chi = mn_character(lambda, merge_parts(rho, sig));
        if (chi == 0) continue;
        Rat coeff(chi, z_of(sig));
        if (sig.size() % 2) coeff = -coeff;
        ClassFun prod = ClassFun::constant(coeff, Basis::a);
        std::vector<int> m = multiplicities(rho);
        for (int r = 1; r <= int(m.size()); ++r)
          if (m[r - 1] > 0) prod = prod * binom_stat(r, m[r - 1]);
        out = out + prod;
      }
  }
  return out;
}

RatFn dimension_poly(const IntPartition& lambda) {
  ClassFun f = to_basis(stable_irreducible(lambda), Basis::xi);
  RatFn out;
  for (const auto& [e, c] : f.terms) {
    int deg = 0;
    for (int x : e) deg += x;
    Poly mono = Poly::constant(1);
    for (int i = 0; i < deg; ++i) mono = mono * Poly::var();
    out = out + RatFn(boost::multiprecision::numerator(c) * mono,
                      Poly::constant(boost::multiprecision::denominator(c)), 0);
  }
  int size = 0;
  for (int p : lambda) size += p;
  int first = lambda.empty() ? 0 : lambda[0];
  out.raise_n_min(size + first);
  return out;
}

std::vector<std::pair<IntPartition, Rat>> decompose_irreducible(const ClassFun& f) {
  int w = weight(f);
  std::vector<std::pair<IntPartition, Rat>> out;
  ClassFun recon = ClassFun::zero(Basis::xi);
  for (int k = 0; k <= w; ++k)
    for (const IntPartition& lambda : partitions_of(k)) {
      ClassFun chi = stable_irreducible(lambda);
      Rat c = stable_inner(f, chi);
      if (c == 0) continue;
      out.push_back({lambda, c});
      recon = recon + c * chi;
    }
  if (!(recon == to_basis(f, Basis::xi)))
    throw internal_error("irreducible expansion failed to reconstruct input");
  return out;
}

ClassFun fixed_tuples_character(int s) {
  ClassFun out = ClassFun::one(Basis::xi);
  for (int i = 0; i < s; ++i)
    out = out * (ClassFun::xi(1) - ClassFun::constant(Rat(i)));
  return out;
}

namespace {

struct CFParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit CFParser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  long long parse_uint() {
    skip();
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
      throw parse_error("expected a number", pos);
    long long v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000000000LL) throw parse_error("number too large", pos);
      ++pos;
    }
    return v;
  }

  ClassFun parse_atom() {
    skip();
    if (pos >= s.size()) throw parse_error("unexpected end of expression", pos);
    if (eat('(')) {
      ClassFun f = parse_expr();
      if (!eat(')')) throw parse_error("expected ')'", pos);
      return f;
    }
    if (s[pos] == '-') {
      ++pos;
      return Rat(-1) * parse_atom();
    }
    if (s.compare(pos, 2, "xi") == 0) {
      pos += 2;
      if (pos < s.size() && s[pos] == '_') ++pos;
      std::size_t at = pos;
      long long k = parse_uint();
      if (k < 1) throw parse_error("stat index must be at least 1", at);
      return ClassFun::xi(int(k));
    }
    if (s[pos] == 'a') {
      ++pos;
      if (pos < s.size() && s[pos] == '_') ++pos;
      std::size_t at = pos;
      long long t = parse_uint();
      if (t < 1) throw parse_error("stat index must be at least 1", at);
      return ClassFun::a(int(t));
    }
    if (std::isdigit((unsigned char)s[pos])) {
      long long num = parse_uint();
      if (eat('/')) {
        long long den = parse_uint();
        if (den == 0) throw parse_error("zero denominator", pos);
        return ClassFun::constant(Rat(num, den));
      }
      return ClassFun::constant(Rat(num));
    }
    throw parse_error("unexpected character in expression", pos);
  }

  ClassFun parse_factor() {
    ClassFun f = parse_atom();
    skip();
    if (eat('^')) {
      long long e = parse_uint();
      if (e > 64) throw parse_error("exponent too large", pos);
      return pow(f, int(e));
    }
    return f;
  }

  ClassFun parse_term() {
    ClassFun f = parse_factor();
    while (true) {
      skip();
      if (eat('*')) {
        f = f * parse_factor();
      } else {
        break;
      }
    }
    return f;
  }

  ClassFun parse_expr() {
    ClassFun f = parse_term();
    while (true) {
      skip();
      if (pos >= s.size()) break;
      if (s[pos] == '+') {
        ++pos;
        f = f + parse_term();
      } else if (s[pos] == '-') {
        ++pos;
        f = f - parse_term();
      } else {
        break;
      }
    }
    return f;
  }
};

}  // namespace

ClassFun parse_class_function(const std::string& text) {
  CFParser p(text);
  ClassFun f = p.parse_expr();
  p.skip();
  if (p.pos != text.size())
    throw parse_error("trailing characters in expression", p.pos);
  // bare constants parse in the xi basis, which would leave expressions
  // like "2*a4 + a1" in mixed bookkeeping; settle pure a-stat input in a
  bool has_xi = text.find("xi") != std::string::npos;
  bool has_a = false;
  for (std::size_t i = 0; i + 1 < text.size(); ++i)
    if (text[i] == 'a' &&
        (std::isdigit((unsigned char)text[i + 1]) || text[i + 1] == '_'))
      has_a = true;
  if (has_a && !has_xi) f = to_basis(f, Basis::a);
  return f;
}

std::string to_string(const ClassFun& f) {
  if (f.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest weight first, then map order
  std::vector<std::pair<std::vector<int>, Rat>> terms(f.terms.begin(),
                                                      f.terms.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    auto w = [](const std::vector<int>& e) {
      int s = 0;
      for (int k = 1; k <= int(e.size()); ++k) s += k * e[k - 1];
      return s;
    };
    return w(x.first) > w(y.first);
  });
  const char* stat = f.basis == Basis::xi ? "xi" : "a";
  for (const auto& [e, c] : terms) {
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = mag == 1;
    if (!unit || e.empty()) {
      std::ostringstream cs;
      cs << mag;
      os << cs.str();
    }
    bool firststat = true;
    for (int k = 1; k <= int(e.size()); ++k) {
      if (e[k - 1] == 0) continue;
      if (!firststat || !unit) os << "*";
      os << stat << k;
      if (e[k - 1] > 1) os << "^" << e[k - 1];
      firststat = false;
    }
  }
  return os.str();
}

}  // namespace wm
