#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "automata.hpp"
#include "brute.hpp"

using namespace regliv;
using namespace regliv::testing;

namespace {

AlphabetRef ab01() { return make_alphabet({"0", "1"}); }

Word w(std::initializer_list<Sym> syms) { return Word(syms); }

// (0|1)*1 with 2 states
Nfa ends_in_one() {
  Nfa n;
  n.alphabet = ab01();
  n.num_states = 2;
  n.initial = {0};
  n.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}};
  n.accepting = {1};
  return n;
}

} // namespace

TEST_CASE("determinize textbook example: (0|1)*1") {
  Nfa n = ends_in_one();
  Dfa d = minimize(determinize(n));
  CHECK(d.num_states == 2);
  for (const Word& word : all_words_upto(2, 7))
    CHECK(d.accepts(word) == naive_accepts(n, word));
}

TEST_CASE("determinize: no accepting states gives the empty language") {
  Nfa n = ends_in_one();
  n.accepting.clear();
  Dfa d = minimize(determinize(n));
  for (const Word& word : all_words_upto(2, 5)) CHECK_FALSE(d.accepts(word));
}

TEST_CASE("minimize: duplicated state collapses, idempotent") {
  // 0*1 with a duplicated accepting state
  Nfa n;
  n.alphabet = ab01();
  n.num_states = 3;
  n.initial = {0};
  n.transitions = {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
  n.accepting = {1, 2};
  Dfa d = minimize(determinize(n));
  CHECK(d.num_states == 2);
  Dfa d2 = minimize(d);
  CHECK(d2.num_states == d.num_states);
  CHECK(dfa_to_string(d2) == dfa_to_string(d)); // canonical renumbering
  CHECK(equivalent(d, d2));
}

TEST_CASE("boolean ops: intersect(0*, 1*) = {eps}") {
  Nfa zeros;
  zeros.alphabet = ab01();
  zeros.num_states = 1;
  zeros.initial = {0};
  zeros.transitions = {{0, 0, 0}};
  zeros.accepting = {0};
  Nfa ones;
  ones.alphabet = ab01();
  ones.num_states = 1;
  ones.initial = {0};
  ones.transitions = {{0, 1, 0}};
  ones.accepting = {0};
  Nfa both = intersect(zeros, ones);
  CHECK(both.accepts(w({})));
  CHECK_FALSE(both.accepts(w({0})));
  CHECK_FALSE(both.accepts(w({1})));
  auto sw = shortest_word(both);
  REQUIRE(sw.has_value());
  CHECK(sw->empty());
}

TEST_CASE("complement of 1 1* within (0|1)+ contains some 0") {
  Nfa ones_plus;
  ones_plus.alphabet = ab01();
  ones_plus.num_states = 2;
  ones_plus.initial = {0};
  ones_plus.transitions = {{0, 1, 1}, {1, 1, 1}};
  ones_plus.accepting = {1};
  Nfa sigma_plus;
  sigma_plus.alphabet = ab01();
  sigma_plus.num_states = 2;
  sigma_plus.initial = {0};
  sigma_plus.transitions = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  sigma_plus.accepting = {1};
  Dfa c = complement(minimize(determinize(ones_plus)), minimize(determinize(sigma_plus)));
  for (const Word& word : all_words_upto(2, 6)) {
    bool has_zero = false;
    for (Sym a : word)
      if (a == 0) has_zero = true;
    CHECK(c.accepts(word) == (!word.empty() && has_zero));
  }
}

TEST_CASE("shortest witness is lexicographically least among shortest") {
  Nfa n = ends_in_one();
  auto sw = shortest_word(n);
  REQUIRE(sw.has_value());
  CHECK(*sw == w({1}));

  // product for failing L1-style check: I0 = 00*, A = 1(0|1)*
  Nfa i0;
  i0.alphabet = ab01();
  i0.num_states = 1;
  i0.initial = {0};
  i0.transitions = {{0, 0, 0}};
  i0.accepting = {0};
  // I0 = 0* here; make it 00* by a fresh start state
  Nfa zz;
  zz.alphabet = ab01();
  zz.num_states = 2;
  zz.initial = {0};
  zz.transitions = {{0, 0, 1}, {1, 0, 1}};
  zz.accepting = {1};
  Nfa a;
  a.alphabet = ab01();
  a.num_states = 2;
  a.initial = {0};
  a.transitions = {{0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  a.accepting = {1};
  Word witness;
  CHECK_FALSE(includes(minimize(determinize(a)), zz, &witness));
  CHECK(witness == w({0}));
}

TEST_CASE("empty nfa has no witness") {
  Nfa n;
  n.alphabet = ab01();
  n.num_states = 1;
  n.initial = {0};
  n.accepting = {};
  CHECK_FALSE(shortest_word(n).has_value());
}

TEST_CASE("apply: identity preserves the language") {
  auto sigma = ab01();
  std::mt19937 rng(7);
  for (int i = 0; i < 30; ++i) {
    Nfa s = random_nfa(rng, sigma);
    Nfa post = apply(identity_relation(sigma), s);
    for (const Word& word : all_words_upto(2, 5))
      CHECK(naive_accepts(post, word) == naive_accepts(s, word));
  }
}

TEST_CASE("compose identity is neutral; hamming-1 squared is not hamming-1") {
  auto sigma = ab01();
  AlphabetRef pa = pair_alphabet(sigma);
  // hamming-1: exactly one differing position
  Nfa h1;
  h1.alphabet = pa;
  h1.num_states = 2;
  h1.initial = {0};
  h1.transitions = {{0, pa->fuse(0, 0), 0}, {0, pa->fuse(1, 1), 0},
                    {0, pa->fuse(0, 1), 1}, {0, pa->fuse(1, 0), 1},
                    {1, pa->fuse(0, 0), 1}, {1, pa->fuse(1, 1), 1}};
  h1.accepting = {1};

  Nfa idrel = identity_relation(sigma);
  Nfa c = compose(idrel, h1);
  for (const Word& word : all_words_upto(4, 4))
    CHECK(naive_accepts(c, word) == naive_accepts(h1, word));

  Nfa h2 = compose(h1, h1);
  // witness pair (00, 11): two single-bit flips
  Word pair00_11 = {pa->fuse(0, 1), pa->fuse(0, 1)};
  CHECK(naive_accepts(h2, pair00_11));
  CHECK_FALSE(naive_accepts(h1, pair00_11));
}

TEST_CASE("compose is associative on random triples") {
  auto sigma = ab01();
  AlphabetRef pa = pair_alphabet(sigma);
  std::mt19937 rng(99);
  for (int i = 0; i < 15; ++i) {
    Nfa r1 = random_nfa(rng, pa, 3);
    Nfa r2 = random_nfa(rng, pa, 3);
    Nfa r3 = random_nfa(rng, pa, 3);
    Nfa left = compose(compose(r1, r2), r3);
    Nfa right = compose(r1, compose(r2, r3));
    for (const Word& word : all_words_upto(4, 4))
      CHECK(naive_accepts(left, word) == naive_accepts(right, word));
  }
}

TEST_CASE("project tracks of a relation") {
  auto sigma = ab01();
  AlphabetRef pa = pair_alphabet(sigma);
  // relation {(01, 10)}
  Nfa r;
  r.alphabet = pa;
  r.num_states = 3;
  r.initial = {0};
  r.transitions = {{0, pa->fuse(0, 1), 1}, {1, pa->fuse(1, 0), 2}};
  r.accepting = {2};
  Nfa dom = project(r, 1);
  Nfa rng_ = project(r, 2);
  CHECK(naive_accepts(dom, w({0, 1})));
  CHECK_FALSE(naive_accepts(dom, w({1, 0})));
  CHECK(naive_accepts(rng_, w({1, 0})));
  // projection of the empty relation is empty
  Nfa empty;
  empty.alphabet = pa;
  empty.num_states = 1;
  empty.initial = {0};
  CHECK_FALSE(shortest_word(project(empty, 1)).has_value());
}

TEST_CASE("cyclic shift closure: explicit rotations") {
  auto sigma = ab01();
  // {01, 0011}
  Nfa n;
  n.alphabet = sigma;
  n.num_states = 7;
  n.initial = {0};
  n.transitions = {{0, 0, 1}, {1, 1, 2},                       // 01
                   {0, 0, 3}, {3, 0, 4}, {4, 1, 5}, {5, 1, 6}}; // 0011
  n.accepting = {2, 6};
  Nfa closed = cyclic_shift_closure(n);
  std::set<Word> got;
  for (const Word& word : all_words_upto(2, 5))
    if (naive_accepts(closed, word)) got.insert(word);
  std::set<Word> expect = {w({0, 1}), w({1, 0}), w({0, 0, 1, 1}), w({0, 1, 1, 0}),
                           w({1, 1, 0, 0}), w({1, 0, 0, 1})};
  CHECK(got == expect);
}

TEST_CASE("cyclic shift closure: property checks against rotation enumeration") {
  auto sigma = ab01();
  std::mt19937 rng(31337);
  for (int i = 0; i < 40; ++i) {
    Nfa s = random_nfa(rng, sigma, 4);
    Nfa closed = cyclic_shift_closure(s);
    // oracle: word in closure iff some rotation of it is in s
    for (const Word& word : all_words_upto(2, 5)) {
      bool expect = false;
      for (size_t k = 0; k < std::max<size_t>(word.size(), 1); ++k) {
        Word rot(word.begin() + k, word.end());
        rot.insert(rot.end(), word.begin(), word.begin() + k);
        if (naive_accepts(s, rot)) expect = true;
      }
      CHECK(naive_accepts(closed, word) == expect);
    }
    // closure is a fixpoint of one more rotation
    Nfa again = cyclic_shift_closure(closed);
    for (const Word& word : all_words_upto(2, 5))
      CHECK(naive_accepts(again, word) == naive_accepts(closed, word));
  }
}

TEST_CASE("rotation relation matches the explicit shift") {
  auto sigma = ab01();
  Nfa rot = rotation_relation(sigma);
  AlphabetRef pa = pair_alphabet(sigma);
  for (const Word& u : all_words_upto(2, 5)) {
    // expected image: u2..un u1
    for (const Word& v : all_words_upto(2, static_cast<uint32_t>(u.size()))) {
      if (v.size() != u.size()) continue;
      Word fused;
      for (size_t i = 0; i < u.size(); ++i) fused.push_back(pa->fuse(u[i], v[i]));
      Word expect_v(u.begin() + (u.empty() ? 0 : 1), u.end());
      if (!u.empty()) expect_v.push_back(u[0]);
      CHECK(naive_accepts(rot, fused) == (v == expect_v));
    }
  }
}

TEST_CASE("randomised operation semantics agree with brute-force enumeration") {
  std::mt19937 rng(4242);
  std::vector<AlphabetRef> alphabets = {ab01(), make_alphabet({"a", "b", "c"}),
                                        make_alphabet({"a", "b", "c", "d"})};
  int cases = 0;
  for (int round = 0; round < 170; ++round) {
    AlphabetRef sigma = alphabets[rng() % alphabets.size()];
    Nfa a = random_nfa(rng, sigma);
    Nfa b = random_nfa(rng, sigma);
    uint32_t maxlen = sigma->size() >= 4 ? 4 : 5;

    Dfa da = minimize(determinize(a));
    Nfa u = unite(a, b);
    Nfa x = intersect(a, b);
    Nfa diff = difference(a, minimize(determinize(b)));
    Dfa comp = complement(da, universal_dfa(sigma));
    ++cases;
    for (const Word& word : all_words_upto(sigma->size(), maxlen)) {
      bool ina = naive_accepts(a, word), inb = naive_accepts(b, word);
      CHECK(da.accepts(word) == ina);
      CHECK(naive_accepts(u, word) == (ina || inb));
      CHECK(naive_accepts(x, word) == (ina && inb));
      CHECK(naive_accepts(diff, word) == (ina && !inb));
      CHECK(comp.accepts(word) == !ina);
    }
    // shortest-word agreement: first accepted word in shortlex order
    auto sw = shortest_word(a);
    Word expect;
    bool found = false;
    for (const Word& word : all_words_upto(sigma->size(), 7)) {
      if (naive_accepts(a, word)) {
        expect = word;
        found = true;
        break;
      }
    }
    if (found && sw.has_value()) {
      if (sw->size() <= 7) CHECK(*sw == expect);
    } else if (found) {
      CHECK(false); // library says empty, oracle found a word
    }
  }
  CHECK(cases >= 150);
}

TEST_CASE("apply agrees with per-word image enumeration") {
  std::mt19937 rng(555);
  auto sigma = make_alphabet({"a", "b", "c"});
  AlphabetRef pa = pair_alphabet(sigma);
  for (int round = 0; round < 25; ++round) {
    Nfa t = random_nfa(rng, pa, 4);
    Nfa s = random_nfa(rng, sigma, 4);
    Nfa post = apply(t, s);
    for (const Word& y : all_words_upto(3, 4)) {
      bool expect = false;
      for (const Word& x : all_words_upto(3, static_cast<uint32_t>(y.size()))) {
        if (x.size() != y.size() || !naive_accepts(s, x)) continue;
        Word fused;
        for (size_t i = 0; i < x.size(); ++i) fused.push_back(pa->fuse(x[i], y[i]));
        if (naive_accepts(t, fused)) expect = true;
      }
      CHECK(naive_accepts(post, y) == expect);
    }
  }
}

TEST_CASE("dump round-trip is bit-exact") {
  std::mt19937 rng(777);
  auto sigma = make_alphabet({"0", "1", "m"});
  for (int i = 0; i < 20; ++i) {
    Dfa d = minimize(determinize(random_nfa(rng, sigma)));
    std::string text = dfa_to_string(d);
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    size_t pos = 0;
    Dfa back = parse_dfa(lines, pos);
    CHECK(dfa_to_string(back) == text);
  }
}

TEST_CASE("state cap raises a structured failure") {
  // determinizing this NFA family explodes: (0|1)* 1 (0|1)^k
  auto sigma = ab01();
  Nfa n;
  n.alphabet = sigma;
  uint32_t k = 18;
  n.num_states = k + 2;
  n.initial = {0};
  n.transitions = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}};
  for (uint32_t i = 1; i <= k; ++i) {
    n.transitions.push_back({i, 0, i + 1});
    n.transitions.push_back({i, 1, i + 1});
  }
  n.accepting = {k + 1};
  CHECK_THROWS_AS(determinize(n, 1000), ResourceLimitError);
}
