#include "wm/words.hpp"

#include <algorithm>
#include <cctype>

#include "wm/errors.hpp"

namespace wm {

namespace {
constexpr const char* kAlphabet = "xyzabcdefghijklmnopqrstuvw";

void append_reduced(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back() == l.inverse())
    out.pop_back();
  else
    out.push_back(l);
}

std::vector<Letter> free_reduce(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (const Letter& l : in) append_reduced(out, l);
  return out;
}
}  // namespace

char generator_char(int gen) {
  if (gen < 0 || gen >= 26) throw internal_error("generator index out of range");
  return kAlphabet[gen];
}

int generator_index(char c) {
  const char lc = char(std::tolower(static_cast<unsigned char>(c)));
  for (int i = 0; i < 26; ++i)
    if (kAlphabet[i] == lc) return i;
  return -1;
}

Word::Word(int r, std::vector<Letter> ls) : rank(r), letters(free_reduce(ls)) {
  for (const Letter& l : letters)
    if (l.gen < 0 || l.gen >= r) throw internal_error("letter outside rank");
}

namespace {

// Recursive-descent parser.  Grammar:
//   seq  := item*          item := atom ['^' int]
//   atom := letter | '(' seq ')'
struct Parser {
  const std::string& text;
  int rank;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return text[pos];
  }

  long parse_int() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw parse_error("expected integer after '^'", start);
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) throw parse_error("exponent too large", start);
      ++pos;
    }
    return neg ? -v : v;
  }

  std::vector<Letter> parse_atom() {
    skip_ws();
    if (pos >= text.size()) throw parse_error("unexpected end of word", pos);
    char c = text[pos];
    if (c == '(') {
      std::size_t open = pos;
      ++pos;
      std::vector<Letter> inner = parse_seq();
      if (at_end() || text[pos] != ')')
        throw parse_error("unclosed '('", open);
      ++pos;
      return inner;
    }
    if (c == '1') {  // the identity, as print_word writes it
      ++pos;
      return {};
    }
    int gen = generator_index(c);
    if (gen < 0) throw parse_error(std::string("unexpected character '") + c + "'", pos);
    if (gen >= rank)
      throw parse_error(std::string("generator '") + c + "' outside rank", pos);
    ++pos;
    int sign = std::isupper(static_cast<unsigned char>(c)) ? -1 : +1;
    return {Letter(gen, sign)};
  }

  std::vector<Letter> parse_item() {
    std::vector<Letter> atom = parse_atom();
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      long e = parse_int();
      std::vector<Letter> out;
      if (e < 0) {
        std::reverse(atom.begin(), atom.end());
        for (Letter& l : atom) l = l.inverse();
        e = -e;
      }
      for (long i = 0; i < e; ++i)
        out.insert(out.end(), atom.begin(), atom.end());
      return out;
    }
    return atom;
  }

  std::vector<Letter> parse_seq() {
    std::vector<Letter> out;
    while (!at_end() && text[pos] != ')') {
      std::vector<Letter> item = parse_item();
      out.insert(out.end(), item.begin(), item.end());
    }
    return out;
  }
};

}  // namespace

Word parse_word(const std::string& text, int rank) {
  if (rank < 0 || rank > 26) throw parse_error("rank out of range");
  Parser p{text, rank};
  std::vector<Letter> ls = p.parse_seq();
  if (!p.at_end()) throw parse_error("unmatched ')'", p.pos);
  return Word(rank, std::move(ls));
}

std::string print_letters(const std::vector<Letter>& ls) {
  std::string s;
  s.reserve(ls.size());
  for (const Letter& l : ls) {
    char c = generator_char(l.gen);
    s += l.sign < 0 ? char(std::toupper(static_cast<unsigned char>(c))) : c;
  }
  return s;
}

std::string print_word(const Word& w) {
  if (w.empty()) return "1";
  return print_letters(w.letters);
}

Word multiply(const Word& a, const Word& b) {
  if (a.rank != b.rank) throw internal_error("rank mismatch in multiply");
  Word out(a.rank);
  out.letters = a.letters;
  for (const Letter& l : b.letters) append_reduced(out.letters, l);
  return out;
}

Word invert(const Word& w) {
  Word out(w.rank);
  out.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(it->inverse());
  return out;
}

Word power(const Word& w, int m) {
  Word base = m < 0 ? invert(w) : w;
  int reps = m < 0 ? -m : m;
  Word out(w.rank);
  for (int i = 0; i < reps; ++i) out = multiply(out, base);
  return out;
}

CyclicReduction cyclic_reduce(const Word& w) {
  if (w.empty())
    throw internal_error("identity word has no cyclic reduction");
  std::size_t i = 0, j = w.size() - 1;
  while (i < j && w.letters[i] == w.letters[j].inverse()) {
    ++i;
    --j;
  }
  CyclicReduction out;
  std::vector<Letter> core(w.letters.begin() + i, w.letters.begin() + j + 1);
  out.cyclic = cyclic_of_reduced(w.rank, core);
  // the canonical rotation shifts the core by some offset k; fold the
  // rotated-away prefix into the conjugator so w = conj * cyclic * conj^-1
  // holds letter for letter
  std::size_t k = 0;
  while (k < core.size()) {
    std::vector<Letter> rot(core.begin() + k, core.end());
    rot.insert(rot.end(), core.begin(), core.begin() + k);
    if (rot == out.cyclic.letters) break;
    ++k;
  }
  std::vector<Letter> conj(w.letters.begin(), w.letters.begin() + i);
  conj.insert(conj.end(), core.begin(), core.begin() + k);
  out.conjugator = Word(w.rank, std::move(conj));
  return out;
}

std::vector<Letter> least_rotation(std::vector<Letter> ls) {
  const std::size_t n = ls.size();
  if (n <= 1) return ls;
  std::size_t best = 0;
  for (std::size_t cand = 1; cand < n; ++cand) {
    for (std::size_t k = 0; k < n; ++k) {
      int a = ls[(cand + k) % n].key();
      int b = ls[(best + k) % n].key();
      if (a != b) {
        if (a < b) best = cand;
        break;
      }
    }
  }
  std::rotate(ls.begin(), ls.begin() + best, ls.end());
  return ls;
}

CyclicWord cyclic_of_reduced(int rank, const std::vector<Letter>& ls) {
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const Letter& a = ls[i];
    const Letter& b = ls[(i + 1) % ls.size()];
    if (b == a.inverse())
      throw internal_error("sequence is not cyclically reduced");
    if (a.gen < 0 || a.gen >= rank) throw internal_error("letter outside rank");
  }
  CyclicWord c;
  c.rank = rank;
  c.letters = least_rotation(ls);
  return c;
}

Word word_of(const CyclicWord& c) { return Word(c.rank, c.letters); }

RootPower max_root(const Word& w) {
  CyclicReduction red = cyclic_reduce(w);
  const std::vector<Letter>& ls = red.cyclic.letters;
  const int n = int(ls.size());
  // Failure function of the canonical rotation; the smallest period divides
  // n exactly when the cyclic word is a proper power.
  std::vector<int> fail(n, 0);
  for (int i = 1; i < n; ++i) {
    int k = fail[i - 1];
    while (k > 0 && !(ls[i] == ls[k])) k = fail[k - 1];
    if (ls[i] == ls[k]) ++k;
    fail[i] = k;
  }
  int p = n - fail[n - 1];
  if (n % p != 0) p = n;
  RootPower out;
  out.root = Word(w.rank, std::vector<Letter>(ls.begin(), ls.begin() + p));
  out.exponent = n / p;
  return out;
}

bool is_conjugate_rotation(const Word& u, const Word& v) {
  if (u.rank != v.rank) return false;
  if (u.empty() || v.empty()) return u.empty() && v.empty();
  return cyclic_reduce(u).cyclic == cyclic_reduce(v).cyclic;
}

std::uint64_t for_each_cyclically_reduced(
    int rank, int length, const std::function<void(const Word&)>& fn) {
  if (length == 0) {
    if (fn) fn(Word(rank));
    return 1;
  }
  // Letters in key order; positions filled left to right, never backtracking
  // onto the previous letter, and the last letter must not cancel the first.
  std::vector<Letter> all;
  for (int g = 0; g < rank; ++g) {
    all.emplace_back(g, +1);
    all.emplace_back(g, -1);
  }
  std::vector<Letter> cur(length);
  std::uint64_t count = 0;
  Word scratch(rank);
  auto rec = [&](auto&& self, int i) -> void {
    for (const Letter& l : all) {
      if (i > 0 && l == cur[i - 1].inverse()) continue;
      if (i == length - 1 && i > 0 && l == cur[0].inverse()) continue;
      cur[i] = l;
      if (i == length - 1) {
        ++count;
        if (fn) {
          scratch.letters = cur;
          fn(scratch);
        }
      } else {
        self(self, i + 1);
      }
    }
  };
  rec(rec, 0);
  return count;
}

std::vector<Word> enumerate_cyclically_reduced(int rank, int length,
                                               std::uint64_t max_count) {
  std::vector<Word> out;
  if (cyclically_reduced_count(rank, length) > max_count)
    throw budget_error("cyclically reduced enumeration exceeds max_count budget");
  for_each_cyclically_reduced(rank, length,
                              [&](const Word& w) { out.push_back(w); });
  return out;
}

std::uint64_t cyclically_reduced_count(int rank, int length) {
  if (length == 0) return 1;
  std::uint64_t pow = 1;
  for (int i = 0; i < length; ++i) pow *= std::uint64_t(2 * rank - 1);
  std::uint64_t v = pow + std::uint64_t(rank);
  if (length % 2 == 0)
    v += std::uint64_t(rank - 1);
  else
    v -= std::uint64_t(rank - 1);
  return v;
}

}  // namespace wm
