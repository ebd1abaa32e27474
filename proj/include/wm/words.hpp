#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wm {

// One letter of a free-group word: generator index 0..rank-1, sign +1/-1.
// Generator g prints as the letter 'a'+g, its inverse as the capital.
struct Letter {
  int gen = 0;
  int sign = +1;

  Letter() = default;
  Letter(int g, int s) : gen(g), sign(s) {}
  Letter inverse() const { return Letter(gen, -sign); }
  bool operator==(const Letter&) const = default;

  // Order used everywhere a letter order is needed: a < A < b < B < ...
  int key() const { return 2 * gen + (sign < 0 ? 1 : 0); }
};

// A freely reduced word over a fixed ambient rank.  The empty word is the
// identity.  All mutating operations keep the reduced invariant.
struct Word {
  int rank = 0;
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(int r) : rank(r) {}
  Word(int r, std::vector<Letter> ls);

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const Word&) const = default;
};

// A cyclically reduced word up to rotation.  Stored in canonical form:
// the lexicographically least rotation under the letter order above.
struct CyclicWord {
  int rank = 0;
  std::vector<Letter> letters;  // canonical rotation, cyclically reduced

  bool operator==(const CyclicWord&) const = default;
  std::size_t size() const { return letters.size(); }
};

// Generator i is written as the i-th character of "xyzabc...w" (x, y, z
// first, then the rest of the alphabet); its inverse is the capital.
char generator_char(int gen);
int generator_index(char c);  // -1 if not a generator character

// Text forms.  parse_word accepts lowercase generators, uppercase inverses,
// ^k powers (k may be negative), parentheses, and ignores whitespace.
// Throws parse_error with the character position on bad input.
Word parse_word(const std::string& text, int rank);
std::string print_word(const Word& w);
std::string print_letters(const std::vector<Letter>& ls);

Word multiply(const Word& a, const Word& b);
Word invert(const Word& w);
Word power(const Word& w, int m);

// w = conjugator * c * conjugator^-1 with c cyclically reduced.
// The identity word has no cyclic reduction; passing it throws.
struct CyclicReduction {
  CyclicWord cyclic;
  Word conjugator;
};
CyclicReduction cyclic_reduce(const Word& w);

// Largest d with w conjugate to u^d; u is returned cyclically reduced and
// is itself not a proper power.  Uses the failure-function period of the
// canonical rotation.  Identity input is rejected.
struct RootPower {
  Word root;
  int exponent = 1;
};
RootPower max_root(const Word& w);

bool is_conjugate_rotation(const Word& u, const Word& v);

// Canonical rotation of a cyclically reduced letter sequence.
std::vector<Letter> least_rotation(std::vector<Letter> ls);

// All cyclically reduced words of length exactly t over rank r, streamed to
// the callback in lexicographic order; returns how many were produced.
// Length 0 yields the empty word once.
std::uint64_t for_each_cyclically_reduced(
    int rank, int length, const std::function<void(const Word&)>& fn);

// Materializing wrapper with a cutoff; throws budget_error beyond it.
std::vector<Word> enumerate_cyclically_reduced(int rank, int length,
                                               std::uint64_t max_count = 20000000);

// Closed form for the count: (2r-1)^t + r + (-1)^t (r-1) for t >= 1, and 1
// for t = 0.
std::uint64_t cyclically_reduced_count(int rank, int length);

Word word_of(const CyclicWord& c);
CyclicWord cyclic_of_reduced(int rank, const std::vector<Letter>& cyclically_reduced);

}  // namespace wm
