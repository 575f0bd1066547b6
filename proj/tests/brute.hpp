// Test-only brute-force oracles: naive word enumeration and direct NFA
// membership, kept independent of the library's construction-based paths.
#pragma once

#include <random>
#include <vector>

#include "automata.hpp"

namespace regliv::testing {

// naive membership: step the state set through the transitions directly
inline bool naive_accepts(const Nfa& n, const Word& w) {
  std::vector<State> cur = n.initial;
  for (Sym a : w) {
    std::vector<State> nxt;
    for (State q : cur)
      for (const Trans& t : n.transitions)
        if (t.src == q && t.sym == a) nxt.push_back(t.dst);
    std::sort(nxt.begin(), nxt.end());
    nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
    cur = std::move(nxt);
    if (cur.empty()) return false;
  }
  for (State q : cur)
    for (State f : n.accepting)
      if (q == f) return true;
  return false;
}

inline bool naive_accepts(const Dfa& d, const Word& w) { return naive_accepts(d.as_nfa(), w); }

// all words over the alphabet up to the given length, shortest first and
// lexicographic within a length
inline std::vector<Word> all_words_upto(size_t sigma, uint32_t maxlen) {
  std::vector<Word> out{{}};
  std::vector<Word> prev{{}};
  for (uint32_t len = 1; len <= maxlen; ++len) {
    std::vector<Word> cur;
    for (const Word& w : prev)
      for (Sym a = 0; a < sigma; ++a) {
        Word x = w;
        x.push_back(a);
        cur.push_back(x);
      }
    out.insert(out.end(), cur.begin(), cur.end());
    prev = std::move(cur);
  }
  return out;
}

inline std::vector<Word> language_upto(const Nfa& n, uint32_t maxlen) {
  std::vector<Word> out;
  for (const Word& w : all_words_upto(n.alphabet->size(), maxlen))
    if (naive_accepts(n, w)) out.push_back(w);
  return out;
}

inline Nfa random_nfa(std::mt19937& rng, const AlphabetRef& alphabet, uint32_t max_states = 6) {
  Nfa n;
  n.alphabet = alphabet;
  n.num_states = 1 + rng() % max_states;
  size_t sigma = alphabet->size();
  size_t ntrans = rng() % (2 * n.num_states * sigma + 1);
  for (size_t i = 0; i < ntrans; ++i)
    n.transitions.push_back({static_cast<State>(rng() % n.num_states),
                             static_cast<Sym>(rng() % sigma),
                             static_cast<State>(rng() % n.num_states)});
  size_t ninit = 1 + rng() % n.num_states;
  for (size_t i = 0; i < ninit; ++i) n.initial.push_back(static_cast<State>(rng() % n.num_states));
  size_t nacc = rng() % (n.num_states + 1);
  for (size_t i = 0; i < nacc; ++i) n.accepting.push_back(static_cast<State>(rng() % n.num_states));
  n.normalize();
  return n;
}

} // namespace regliv::testing
