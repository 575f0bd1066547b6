// automata.hpp -- finite automata and length-preserving transducers.
//
// All values are immutable once built; operations are pure functions.
// Transducers are plain automata over a fused pair alphabet (letter a/b is
// stored as the single symbol index i*|base|+j), so every algorithm below is
// single-alphabet.
//
// Partial DFAs: a missing transition rejects. Complement is taken relative to
// an explicit universe automaton. Emptiness and inclusion failures always
// report the lexicographically least witness among the shortest ones, using
// the alphabet's declared order.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regliv {

using Sym = uint32_t;
using State = uint32_t;
using Word = std::vector<Sym>;

struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct AlphabetError : std::runtime_error {
  explicit AlphabetError(const std::string& what) : std::runtime_error(what) {}
};

class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> letters);

  // fused pair alphabet with letters "a/b", ordered by i*|base|+j
  static Alphabet pairs(const Alphabet& base);

  size_t size() const { return names_.size(); }
  const std::string& name(Sym s) const { return names_.at(s); }
  std::optional<Sym> find(std::string_view letter) const;
  const std::vector<std::string>& letters() const { return names_; }

  bool is_pair() const { return base_ > 0; }
  size_t base_size() const { return base_; }
  Sym fuse(Sym a, Sym b) const { return static_cast<Sym>(a * base_ + b); }
  std::pair<Sym, Sym> split(Sym ab) const {
    return {static_cast<Sym>(ab / base_), static_cast<Sym>(ab % base_)};
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, Sym, std::less<>> index_;
  size_t base_ = 0;
};

using AlphabetRef = std::shared_ptr<const Alphabet>;

AlphabetRef make_alphabet(std::vector<std::string> letters);
AlphabetRef pair_alphabet(const AlphabetRef& base);

struct Trans {
  State src;
  Sym sym;
  State dst;
  auto operator<=>(const Trans&) const = default;
};

struct Dfa;

struct Nfa {
  AlphabetRef alphabet;
  uint32_t num_states = 0;
  std::vector<State> initial;     // sorted, unique
  std::vector<Trans> transitions; // sorted, unique
  std::vector<State> accepting;   // sorted, unique

  bool accepts(std::span<const Sym> word) const;
  void normalize(); // sort + dedupe the three vectors
};

// Partial DFA: next(q, a) < 0 means reject.
struct Dfa {
  AlphabetRef alphabet;
  uint32_t num_states = 0;
  State initial = 0;
  std::vector<int32_t> next_tab; // num_states * |alphabet|
  std::vector<bool> accept_tab;  // num_states

  int32_t next(State q, Sym a) const { return next_tab[q * alphabet->size() + a]; }
  bool is_accepting(State q) const { return accept_tab[q]; }
  bool accepts(std::span<const Sym> word) const;
  Nfa as_nfa() const;
};

// Per-state adjacency index for an Nfa, built on demand by algorithms.
struct NfaIndex {
  explicit NfaIndex(const Nfa& n);
  // outgoing transitions of q on a: contiguous slice of targets
  std::span<const State> targets(State q, Sym a) const;

private:
  size_t sigma_;
  std::vector<uint32_t> offsets_; // (num_states * sigma + 1)
  std::vector<State> flat_;
};

inline constexpr size_t kDefaultStateCap = 1'000'000;

// --- core constructions -----------------------------------------------------

Dfa determinize(const Nfa& n, size_t max_states = kDefaultStateCap);
Dfa minimize(const Dfa& d);

Nfa intersect(const Nfa& a, const Nfa& b, size_t cap = kDefaultStateCap);
Nfa unite(const Nfa& a, const Nfa& b);
Dfa complement(const Dfa& d, const Dfa& universe);
Dfa universal_dfa(const AlphabetRef& alphabet); // Sigma*
Dfa empty_dfa(const AlphabetRef& alphabet);
// L(a) \ L(b)
Nfa difference(const Nfa& a, const Dfa& b, size_t cap = kDefaultStateCap);

// Absent iff the language is empty; otherwise the shortest witness,
// lexicographically least among the shortest.
std::optional<Word> shortest_word(const Nfa& n);

// true iff L(sub) is a subset of L(sup); on failure *witness (if non-null)
// receives the shortest-lex word in L(sub) \ L(sup).
bool includes(const Dfa& sup, const Nfa& sub, Word* witness = nullptr);
bool equivalent(const Dfa& a, const Dfa& b, Word* witness = nullptr);

// --- transducer algebra (pair-alphabet Nfa) ---------------------------------

// post-image { y : exists x in s with (x,y) in t }
Nfa apply(const Nfa& t, const Nfa& s, size_t cap = kDefaultStateCap);
// relation composition: accepts x(x)z iff exists y with (x,y) in r1, (y,z) in r2
Nfa compose(const Nfa& r1, const Nfa& r2, size_t cap = kDefaultStateCap);
// keep one track of a pair automaton (track 1 = domain, track 2 = range)
Nfa project(const Nfa& t, int track);
Nfa inverse(const Nfa& t);
// t restricted to pairs whose first (resp. second) track lies in s
Nfa restrict_domain(const Nfa& t, const Nfa& s, size_t cap = kDefaultStateCap);
Nfa restrict_range(const Nfa& t, const Nfa& s, size_t cap = kDefaultStateCap);
// { (x,y) : x in a, y in b, |x| = |y| }
Nfa cross(const Nfa& a, const Nfa& b, size_t cap = kDefaultStateCap);
// { (w,w) : w in s }
Nfa diagonal(const Nfa& s);
// identity relation on Sigma*
Nfa identity_relation(const AlphabetRef& base);
// the rotation bijection u1 u2 ... un -> u2 ... un u1
Nfa rotation_relation(const AlphabetRef& base);

// { vu : uv in L(s) }
Nfa cyclic_shift_closure(const Nfa& s);

// --- enumeration helpers -----------------------------------------------------

// all accepted words of the given length, in lexicographic order
std::vector<Word> words_of_length(const Dfa& d, uint32_t len, size_t cap = kDefaultStateCap);
// successors of a single word under a pair-alphabet transducer, lex order
std::vector<Word> image_of_word(const Nfa& t, const Word& w, size_t cap = kDefaultStateCap);
// minimized DFA of { y : (w, y) in t }
Dfa image_dfa(const Nfa& t, const Word& w, size_t cap = kDefaultStateCap);

// --- text dump format ---------------------------------------------------------
//
//   dfa <n> <alphabet-csv>
//   <q> <letter> <q'>        (sorted by (q, letter index))
//   init <q0>
//   accept <q1> <q2> ...
//
// States are numbered 0..n-1 and printed in ascending order.

void print_dfa(std::ostream& out, const Dfa& d);
std::string dfa_to_string(const Dfa& d);
// Parses one dump starting at line `pos` of `lines`; advances pos.
Dfa parse_dfa(const std::vector<std::string>& lines, size_t& pos);

std::string format_word(const Alphabet& alphabet, const Word& w);

} // namespace regliv
