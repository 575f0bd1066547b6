#include "automata.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace regliv {

// --- Alphabet ----------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> letters) : names_(std::move(letters)) {
  if (names_.empty()) throw AlphabetError("alphabet must not be empty");
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw AlphabetError("empty letter name");
    auto [it, fresh] = index_.emplace(names_[i], static_cast<Sym>(i));
    if (!fresh) throw AlphabetError("duplicate letter: " + names_[i]);
  }
}

Alphabet Alphabet::pairs(const Alphabet& base) {
  if (base.is_pair()) throw AlphabetError("alphabet is already a pair alphabet");
  std::vector<std::string> names;
  names.reserve(base.size() * base.size());
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = 0; j < base.size(); ++j)
      names.push_back(base.name(static_cast<Sym>(i)) + "/" + base.name(static_cast<Sym>(j)));
  Alphabet a(std::move(names));
  a.base_ = base.size();
  return a;
}

std::optional<Sym> Alphabet::find(std::string_view letter) const {
  auto it = index_.find(letter);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AlphabetRef make_alphabet(std::vector<std::string> letters) {
  return std::make_shared<const Alphabet>(std::move(letters));
}

AlphabetRef pair_alphabet(const AlphabetRef& base) {
  return std::make_shared<const Alphabet>(Alphabet::pairs(*base));
}

static void require_same_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !(*a == *b)) throw AlphabetError("alphabet mismatch");
}

// --- Nfa / Dfa basics ---------------------------------------------------------

void Nfa::normalize() {
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  std::sort(accepting.begin(), accepting.end());
  accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
}

bool Nfa::accepts(std::span<const Sym> word) const {
  NfaIndex idx(*this);
  std::vector<bool> cur(num_states, false), nxt(num_states, false);
  for (State q : initial) cur[q] = true;
  for (Sym a : word) {
    std::fill(nxt.begin(), nxt.end(), false);
    bool any = false;
    for (State q = 0; q < num_states; ++q)
      if (cur[q])
        for (State t : idx.targets(q, a)) {
          nxt[t] = true;
          any = true;
        }
    cur.swap(nxt);
    if (!any) return false;
  }
  for (State q : accepting)
    if (cur[q]) return true;
  return false;
}

bool Dfa::accepts(std::span<const Sym> word) const {
  int64_t q = initial;
  for (Sym a : word) {
    q = next(static_cast<State>(q), a);
    if (q < 0) return false;
  }
  return accept_tab[static_cast<size_t>(q)];
}

Nfa Dfa::as_nfa() const {
  Nfa n;
  n.alphabet = alphabet;
  n.num_states = num_states;
  n.initial = {initial};
  for (State q = 0; q < num_states; ++q) {
    for (Sym a = 0; a < alphabet->size(); ++a) {
      int32_t t = next(q, a);
      if (t >= 0) n.transitions.push_back({q, a, static_cast<State>(t)});
    }
    if (accept_tab[q]) n.accepting.push_back(q);
  }
  return n;
}

NfaIndex::NfaIndex(const Nfa& n) : sigma_(n.alphabet->size()) {
  offsets_.assign(n.num_states * sigma_ + 1, 0);
  for (const Trans& t : n.transitions) ++offsets_[t.src * sigma_ + t.sym + 1];
  for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  flat_.resize(n.transitions.size());
  std::vector<uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Trans& t : n.transitions) flat_[fill[t.src * sigma_ + t.sym]++] = t.dst;
}

std::span<const State> NfaIndex::targets(State q, Sym a) const {
  size_t k = q * sigma_ + a;
  return {flat_.data() + offsets_[k], flat_.data() + offsets_[k + 1]};
}

// --- determinize ---------------------------------------------------------------

Dfa determinize(const Nfa& n, size_t max_states) {
  NfaIndex idx(n);
  size_t sigma = n.alphabet->size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets;
  std::deque<State> queue;

  auto intern = [&](std::vector<State> set) -> State {
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    if (sets.size() >= max_states)
      throw ResourceLimitError("determinize: state cap exceeded");
    State id = static_cast<State>(sets.size());
    ids.emplace(set, id);
    sets.push_back(std::move(set));
    queue.push_back(id);
    return id;
  };

  std::vector<bool> accept_mark(n.num_states, false);
  for (State q : n.accepting) accept_mark[q] = true;

  Dfa d;
  d.alphabet = n.alphabet;
  std::vector<State> init(n.initial);
  intern(std::move(init));
  std::vector<int32_t> table;
  std::vector<bool> accept;

  std::vector<bool> mark(n.num_states, false);
  while (!queue.empty()) {
    State id = queue.front();
    queue.pop_front();
    if (table.size() < (id + 1) * sigma) table.resize((id + 1) * sigma, -1);
    if (accept.size() < id + 1) accept.resize(id + 1, false);
    const std::vector<State> set = sets[id]; // copy: sets may reallocate
    accept[id] = std::any_of(set.begin(), set.end(), [&](State q) { return accept_mark[q]; });
    for (Sym a = 0; a < sigma; ++a) {
      std::vector<State> succ;
      for (State q : set)
        for (State t : idx.targets(q, a))
          if (!mark[t]) {
            mark[t] = true;
            succ.push_back(t);
          }
      for (State t : succ) mark[t] = false;
      if (succ.empty()) continue;
      std::sort(succ.begin(), succ.end());
      State tid = intern(std::move(succ));
      if (table.size() < (id + 1) * sigma) table.resize((id + 1) * sigma, -1);
      table[id * sigma + a] = static_cast<int32_t>(tid);
    }
  }
  d.num_states = static_cast<uint32_t>(sets.size());
  table.resize(d.num_states * sigma, -1);
  accept.resize(d.num_states, false);
  d.initial = 0;
  d.next_tab = std::move(table);
  d.accept_tab = std::move(accept);
  return d;
}

// --- minimize -------------------------------------------------------------------

static Dfa canonical_renumber(const Dfa& d) {
  // BFS from the initial state in letter order; unreachable states dropped.
  size_t sigma = d.alphabet->size();
  std::vector<int32_t> order(d.num_states, -1);
  std::vector<State> bfs{d.initial};
  order[d.initial] = 0;
  for (size_t i = 0; i < bfs.size(); ++i) {
    State q = bfs[i];
    for (Sym a = 0; a < sigma; ++a) {
      int32_t t = d.next(q, a);
      if (t >= 0 && order[t] < 0) {
        order[t] = static_cast<int32_t>(bfs.size());
        bfs.push_back(static_cast<State>(t));
      }
    }
  }
  Dfa out;
  out.alphabet = d.alphabet;
  out.num_states = static_cast<uint32_t>(bfs.size());
  out.initial = 0;
  out.next_tab.assign(out.num_states * sigma, -1);
  out.accept_tab.assign(out.num_states, false);
  for (State q : bfs) {
    State nq = static_cast<State>(order[q]);
    out.accept_tab[nq] = d.accept_tab[q];
    for (Sym a = 0; a < sigma; ++a) {
      int32_t t = d.next(q, a);
      if (t >= 0) out.next_tab[nq * sigma + a] = order[t];
    }
  }
  return out;
}

Dfa minimize(const Dfa& d) {
  size_t sigma = d.alphabet->size();

  // trim: keep states reachable from the initial state and co-reachable to
  // some accepting state
  std::vector<bool> fwd(d.num_states, false);
  {
    std::vector<State> stack{d.initial};
    fwd[d.initial] = true;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (Sym a = 0; a < sigma; ++a) {
        int32_t t = d.next(q, a);
        if (t >= 0 && !fwd[t]) {
          fwd[t] = true;
          stack.push_back(static_cast<State>(t));
        }
      }
    }
  }
  std::vector<bool> bwd(d.num_states, false);
  {
    std::vector<std::vector<State>> pred(d.num_states);
    for (State q = 0; q < d.num_states; ++q)
      for (Sym a = 0; a < sigma; ++a) {
        int32_t t = d.next(q, a);
        if (t >= 0) pred[t].push_back(q);
      }
    std::vector<State> stack;
    for (State q = 0; q < d.num_states; ++q)
      if (d.accept_tab[q]) {
        bwd[q] = true;
        stack.push_back(q);
      }
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State p : pred[q])
        if (!bwd[p]) {
          bwd[p] = true;
          stack.push_back(p);
        }
    }
  }

  std::vector<int32_t> live(d.num_states, -1);
  std::vector<State> live_states;
  for (State q = 0; q < d.num_states; ++q)
    if (fwd[q] && bwd[q]) {
      live[q] = static_cast<int32_t>(live_states.size());
      live_states.push_back(q);
    }
  if (live.empty() || live[d.initial] < 0) return empty_dfa(d.alphabet);
  size_t n = live_states.size();

  // Moore partition refinement over the trimmed partial DFA; a missing
  // transition behaves like a distinct dead class (-1).
  std::vector<int32_t> cls(n);
  for (size_t i = 0; i < n; ++i) cls[i] = d.accept_tab[live_states[i]] ? 1 : 0;
  int32_t num_classes = -1; // unknown until the first refinement round
  for (;;) {
    std::map<std::vector<int32_t>, int32_t> sig_ids;
    std::vector<int32_t> next_cls(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<int32_t> sig;
      sig.reserve(sigma + 1);
      sig.push_back(cls[i]);
      State q = live_states[i];
      for (Sym a = 0; a < sigma; ++a) {
        int32_t t = d.next(q, a);
        sig.push_back(t >= 0 && live[t] >= 0 ? cls[live[t]] : -1);
      }
      auto [it, fresh] = sig_ids.emplace(std::move(sig), static_cast<int32_t>(sig_ids.size()));
      (void)fresh;
      next_cls[i] = it->second;
    }
    int32_t found = static_cast<int32_t>(sig_ids.size());
    cls.swap(next_cls);
    if (found == num_classes) break;
    num_classes = found;
  }

  Dfa q;
  q.alphabet = d.alphabet;
  q.num_states = static_cast<uint32_t>(num_classes);
  q.initial = static_cast<State>(cls[live[d.initial]]);
  q.next_tab.assign(q.num_states * sigma, -1);
  q.accept_tab.assign(q.num_states, false);
  for (size_t i = 0; i < n; ++i) {
    State src = static_cast<State>(cls[i]);
    State orig = live_states[i];
    if (d.accept_tab[orig]) q.accept_tab[src] = true;
    for (Sym a = 0; a < sigma; ++a) {
      int32_t t = d.next(orig, a);
      if (t >= 0 && live[t] >= 0) q.next_tab[src * sigma + a] = cls[live[t]];
    }
  }
  return canonical_renumber(q);
}

// --- boolean operations -----------------------------------------------------

namespace {

// generic reachable product of two NFAs with a per-letter pairing rule
struct PairKey {
  uint64_t v;
  bool operator<(const PairKey& o) const { return v < o.v; }
};

} // namespace

Nfa intersect(const Nfa& a, const Nfa& b, size_t cap) {
  require_same_alphabet(a.alphabet, b.alphabet);
  NfaIndex ia(a), ib(b);
  size_t sigma = a.alphabet->size();

  std::map<uint64_t, State> ids;
  std::vector<uint64_t> keys;
  auto intern = [&](State qa, State qb) -> State {
    uint64_t k = (static_cast<uint64_t>(qa) << 32) | qb;
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw ResourceLimitError("intersect: state cap exceeded");
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };

  Nfa out;
  out.alphabet = a.alphabet;
  for (State qa : a.initial)
    for (State qb : b.initial) out.initial.push_back(intern(qa, qb));

  std::vector<bool> acc_a(a.num_states, false), acc_b(b.num_states, false);
  for (State q : a.accepting) acc_a[q] = true;
  for (State q : b.accepting) acc_b[q] = true;

  for (size_t i = 0; i < keys.size(); ++i) {
    State qa = static_cast<State>(keys[i] >> 32);
    State qb = static_cast<State>(keys[i] & 0xffffffffu);
    if (acc_a[qa] && acc_b[qb]) out.accepting.push_back(static_cast<State>(i));
    for (Sym s = 0; s < sigma; ++s)
      for (State ta : ia.targets(qa, s))
        for (State tb : ib.targets(qb, s))
          out.transitions.push_back({static_cast<State>(i), s, intern(ta, tb)});
  }
  out.num_states = static_cast<uint32_t>(keys.size());
  out.normalize();
  return out;
}

Nfa unite(const Nfa& a, const Nfa& b) {
  require_same_alphabet(a.alphabet, b.alphabet);
  Nfa out;
  out.alphabet = a.alphabet;
  out.num_states = a.num_states + b.num_states;
  out.initial = a.initial;
  out.transitions = a.transitions;
  out.accepting = a.accepting;
  State off = a.num_states;
  for (State q : b.initial) out.initial.push_back(q + off);
  for (const Trans& t : b.transitions)
    out.transitions.push_back({t.src + off, t.sym, t.dst + off});
  for (State q : b.accepting) out.accepting.push_back(q + off);
  out.normalize();
  return out;
}

Dfa universal_dfa(const AlphabetRef& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.num_states = 1;
  d.initial = 0;
  d.next_tab.assign(alphabet->size(), 0);
  d.accept_tab = {true};
  return d;
}

Dfa empty_dfa(const AlphabetRef& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  d.num_states = 1;
  d.initial = 0;
  d.next_tab.assign(alphabet->size(), -1);
  d.accept_tab = {false};
  return d;
}

// product of two DFAs where missing transitions act as a rejecting sink
static Dfa dfa_product(const Dfa& a, const Dfa& b, bool (*comb)(bool, bool), size_t cap) {
  require_same_alphabet(a.alphabet, b.alphabet);
  size_t sigma = a.alphabet->size();
  // state encoding: (qa+1, qb+1) with 0 = dead on either side
  std::map<uint64_t, State> ids;
  std::vector<uint64_t> keys;
  auto intern = [&](int64_t qa, int64_t qb) -> State {
    uint64_t k = (static_cast<uint64_t>(qa + 1) << 32) | static_cast<uint64_t>(qb + 1);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw ResourceLimitError("product: state cap exceeded");
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };
  Dfa out;
  out.alphabet = a.alphabet;
  intern(a.initial, b.initial);
  std::vector<int32_t> table;
  std::vector<bool> accept;
  for (size_t i = 0; i < keys.size(); ++i) {
    int64_t qa = static_cast<int64_t>(keys[i] >> 32) - 1;
    int64_t qb = static_cast<int64_t>(keys[i] & 0xffffffffu) - 1;
    table.resize(std::max(table.size(), (i + 1) * sigma), -1);
    accept.resize(std::max(accept.size(), i + 1), false);
    bool ia = qa >= 0 && a.accept_tab[static_cast<size_t>(qa)];
    bool ib = qb >= 0 && b.accept_tab[static_cast<size_t>(qb)];
    accept[i] = comb(ia, ib);
    for (Sym s = 0; s < sigma; ++s) {
      int64_t ta = qa >= 0 ? a.next(static_cast<State>(qa), s) : -1;
      int64_t tb = qb >= 0 ? b.next(static_cast<State>(qb), s) : -1;
      if (ta < 0 && tb < 0) continue;
      State tid = intern(ta, tb);
      table.resize(std::max(table.size(), (i + 1) * sigma), -1);
      table[i * sigma + s] = static_cast<int32_t>(tid);
    }
  }
  out.num_states = static_cast<uint32_t>(keys.size());
  table.resize(out.num_states * sigma, -1);
  accept.resize(out.num_states, false);
  out.initial = 0;
  out.next_tab = std::move(table);
  out.accept_tab = std::move(accept);
  return out;
}

Dfa complement(const Dfa& d, const Dfa& universe) {
  return minimize(dfa_product(universe, d, [](bool u, bool x) { return u && !x; },
                              kDefaultStateCap));
}

Nfa difference(const Nfa& a, const Dfa& b, size_t cap) {
  require_same_alphabet(a.alphabet, b.alphabet);
  NfaIndex ia(a);
  size_t sigma = a.alphabet->size();
  // pair (state of a, state of b or dead)
  std::map<uint64_t, State> ids;
  std::vector<uint64_t> keys;
  auto intern = [&](State qa, int64_t qb) -> State {
    uint64_t k = (static_cast<uint64_t>(qa) << 32) | static_cast<uint64_t>(qb + 1);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    if (keys.size() >= cap) throw ResourceLimitError("difference: state cap exceeded");
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };
  Nfa out;
  out.alphabet = a.alphabet;
  std::vector<bool> acc_a(a.num_states, false);
  for (State q : a.accepting) acc_a[q] = true;
  for (State qa : a.initial) out.initial.push_back(intern(qa, b.initial));
  for (size_t i = 0; i < keys.size(); ++i) {
    State qa = static_cast<State>(keys[i] >> 32);
    int64_t qb = static_cast<int64_t>(keys[i] & 0xffffffffu) - 1;
    bool inb = qb >= 0 && b.accept_tab[static_cast<size_t>(qb)];
    if (acc_a[qa] && !inb) out.accepting.push_back(static_cast<State>(i));
    for (Sym s = 0; s < sigma; ++s) {
      int64_t tb = qb >= 0 ? b.next(static_cast<State>(qb), s) : -1;
      for (State ta : ia.targets(qa, s))
        out.transitions.push_back({static_cast<State>(i), s, intern(ta, tb)});
    }
  }
  out.num_states = static_cast<uint32_t>(keys.size());
  out.normalize();
  return out;
}

// --- emptiness with shortest-lex witness --------------------------------------

std::optional<Word> shortest_word(const Nfa& n) {
  size_t sigma = n.alphabet->size();
  // backward BFS: h[q] = length of shortest word from q to an accepting state
  std::vector<std::vector<std::pair<State, Sym>>> pred(n.num_states);
  for (const Trans& t : n.transitions) pred[t.dst].push_back({t.src, t.sym});
  std::vector<int32_t> h(n.num_states, -1);
  std::deque<State> queue;
  for (State q : n.accepting) {
    h[q] = 0;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (auto [p, s] : pred[q]) {
      (void)s;
      if (h[p] < 0) {
        h[p] = h[q] + 1;
        queue.push_back(p);
      }
    }
  }
  int32_t best = -1;
  for (State q : n.initial)
    if (h[q] >= 0 && (best < 0 || h[q] < best)) best = h[q];
  if (best < 0) return std::nullopt;

  NfaIndex idx(n);
  Word w;
  std::vector<State> cur;
  for (State q : n.initial)
    if (h[q] == best) cur.push_back(q);
  std::vector<bool> mark(n.num_states, false);
  for (int32_t remaining = best; remaining > 0; --remaining) {
    for (Sym a = 0; a < sigma; ++a) {
      std::vector<State> nxt;
      for (State q : cur)
        for (State t : idx.targets(q, a))
          if (h[t] == remaining - 1 && !mark[t]) {
            mark[t] = true;
            nxt.push_back(t);
          }
      for (State t : nxt) mark[t] = false;
      if (!nxt.empty()) {
        w.push_back(a);
        cur = std::move(nxt);
        break;
      }
    }
  }
  assert(static_cast<int32_t>(w.size()) == best);
  return w;
}

bool includes(const Dfa& sup, const Nfa& sub, Word* witness) {
  Nfa bad = difference(sub, sup);
  auto w = shortest_word(bad);
  if (!w) return true;
  if (witness) *witness = std::move(*w);
  return false;
}

bool equivalent(const Dfa& a, const Dfa& b, Word* witness) {
  if (!includes(a, b.as_nfa(), witness)) return false;
  if (!includes(b, a.as_nfa(), witness)) return false;
  return true;
}

// --- transducer algebra --------------------------------------------------------

static void require_pair(const Nfa& t) {
  if (!t.alphabet->is_pair()) throw AlphabetError("expected a pair-alphabet automaton");
}

Nfa apply(const Nfa& t, const Nfa& s, size_t cap) {
  require_pair(t);
  AlphabetRef base = s.alphabet;
  if (t.alphabet->base_size() != base->size()) throw AlphabetError("alphabet mismatch");
  size_t sigma = base->size();
  NfaIndex it_(t), is_(s);

  std::map<uint64_t, State> ids;
  std::vector<uint64_t> keys;
  auto intern = [&](State qt, State qs) -> State {
    uint64_t k = (static_cast<uint64_t>(qt) << 32) | qs;
    auto f = ids.find(k);
    if (f != ids.end()) return f->second;
    if (keys.size() >= cap) throw ResourceLimitError("apply: state cap exceeded");
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };

  Nfa out;
  out.alphabet = base;
  std::vector<bool> acc_t(t.num_states, false), acc_s(s.num_states, false);
  for (State q : t.accepting) acc_t[q] = true;
  for (State q : s.accepting) acc_s[q] = true;
  for (State qt : t.initial)
    for (State qs : s.initial) out.initial.push_back(intern(qt, qs));
  for (size_t i = 0; i < keys.size(); ++i) {
    State qt = static_cast<State>(keys[i] >> 32);
    State qs = static_cast<State>(keys[i] & 0xffffffffu);
    if (acc_t[qt] && acc_s[qs]) out.accepting.push_back(static_cast<State>(i));
    for (Sym a = 0; a < sigma; ++a) {
      auto s_targets = is_.targets(qs, a);
      if (s_targets.empty()) continue;
      for (Sym b = 0; b < sigma; ++b) {
        Sym ab = t.alphabet->fuse(a, b);
        for (State tt : it_.targets(qt, ab))
          for (State ts : s_targets)
            out.transitions.push_back({static_cast<State>(i), b, intern(tt, ts)});
      }
    }
  }
  out.num_states = static_cast<uint32_t>(keys.size());
  out.normalize();
  return out;
}

Nfa compose(const Nfa& r1, const Nfa& r2, size_t cap) {
  require_pair(r1);
  require_pair(r2);
  require_same_alphabet(r1.alphabet, r2.alphabet);
  size_t sigma = r1.alphabet->base_size();
  const Alphabet& pa = *r1.alphabet;

  // index r2 transitions by (state, first-track letter)
  std::vector<std::vector<std::pair<Sym, State>>> by_first(r2.num_states * sigma);
  for (const Trans& t : r2.transitions) {
    auto [b, c] = pa.split(t.sym);
    by_first[t.src * sigma + b].push_back({c, t.dst});
  }

  std::map<uint64_t, State> ids;
  std::vector<uint64_t> keys;
  auto intern = [&](State q1, State q2) -> State {
    uint64_t k = (static_cast<uint64_t>(q1) << 32) | q2;
    auto f = ids.find(k);
    if (f != ids.end()) return f->second;
    if (keys.size() >= cap) throw ResourceLimitError("compose: state cap exceeded");
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };

  Nfa out;
  out.alphabet = r1.alphabet;
  std::vector<bool> a1(r1.num_states, false), a2(r2.num_states, false);
  for (State q : r1.accepting) a1[q] = true;
  for (State q : r2.accepting) a2[q] = true;
  for (State q1 : r1.initial)
    for (State q2 : r2.initial) out.initial.push_back(intern(q1, q2));

  NfaIndex i1(r1);
  for (size_t i = 0; i < keys.size(); ++i) {
    State q1 = static_cast<State>(keys[i] >> 32);
    State q2 = static_cast<State>(keys[i] & 0xffffffffu);
    if (a1[q1] && a2[q2]) out.accepting.push_back(static_cast<State>(i));
    for (Sym a = 0; a < sigma; ++a)
      for (Sym b = 0; b < sigma; ++b) {
        Sym ab = pa.fuse(a, b);
        auto t1s = i1.targets(q1, ab);
        if (t1s.empty()) continue;
        for (auto [c, t2] : by_first[q2 * sigma + b])
          for (State t1 : t1s)
            out.transitions.push_back(
                {static_cast<State>(i), pa.fuse(a, c), intern(t1, t2)});
      }
  }
  out.num_states = static_cast<uint32_t>(keys.size());
  out.normalize();
  return out;
}

Nfa project(const Nfa& t, int track) {
  require_pair(t);
  if (track != 1 && track != 2) throw std::invalid_argument("project: track must be 1 or 2");
  const Alphabet& pa = *t.alphabet;
  // rebuild the base alphabet from the pair names
  size_t bs = pa.base_size();
  std::vector<std::string> names;
  names.reserve(bs);
  for (size_t i = 0; i < bs; ++i) {
    const std::string& pn = pa.name(pa.fuse(static_cast<Sym>(i), 0));
    names.push_back(pn.substr(0, pn.rfind('/')));
  }
  Nfa out;
  out.alphabet = make_alphabet(std::move(names));
  out.num_states = t.num_states;
  out.initial = t.initial;
  out.accepting = t.accepting;
  out.transitions.reserve(t.transitions.size());
  for (const Trans& tr : t.transitions) {
    auto [a, b] = pa.split(tr.sym);
    out.transitions.push_back({tr.src, track == 1 ? a : b, tr.dst});
  }
  out.normalize();
  return out;
}

Nfa inverse(const Nfa& t) {
  require_pair(t);
  const Alphabet& pa = *t.alphabet;
  Nfa out = t;
  for (Trans& tr : out.transitions) {
    auto [a, b] = pa.split(tr.sym);
    tr.sym = pa.fuse(b, a);
  }
  out.normalize();
  return out;
}

Nfa diagonal(const Nfa& s) {
  if (s.alphabet->is_pair()) throw AlphabetError("diagonal expects a base-alphabet automaton");
  AlphabetRef pa = pair_alphabet(s.alphabet);
  Nfa out;
  out.alphabet = pa;
  out.num_states = s.num_states;
  out.initial = s.initial;
  out.accepting = s.accepting;
  for (const Trans& t : s.transitions)
    out.transitions.push_back({t.src, pa->fuse(t.sym, t.sym), t.dst});
  out.normalize();
  return out;
}

Nfa identity_relation(const AlphabetRef& base) {
  return diagonal(universal_dfa(base).as_nfa());
}

Nfa rotation_relation(const AlphabetRef& base) {
  size_t sigma = base->size();
  AlphabetRef pa = pair_alphabet(base);
  // states: 0 = start; 1 + f*sigma + x = "first input letter was f, the next
  // input letter must be x". Accept (f, f) states and, for the empty word,
  // the start state.
  Nfa out;
  out.alphabet = pa;
  out.num_states = static_cast<uint32_t>(1 + sigma * sigma);
  out.initial = {0};
  auto st = [&](Sym f, Sym x) { return static_cast<State>(1 + f * sigma + x); };
  for (Sym f = 0; f < sigma; ++f)
    for (Sym b = 0; b < sigma; ++b)
      out.transitions.push_back({0, pa->fuse(f, b), st(f, b)});
  for (Sym f = 0; f < sigma; ++f)
    for (Sym x = 0; x < sigma; ++x)
      for (Sym b = 0; b < sigma; ++b)
        out.transitions.push_back({st(f, x), pa->fuse(x, b), st(f, b)});
  out.accepting.push_back(0); // rotation of the empty word
  for (Sym f = 0; f < sigma; ++f) out.accepting.push_back(st(f, f));
  out.normalize();
  return out;
}

Nfa restrict_domain(const Nfa& t, const Nfa& s, size_t cap) {
  require_pair(t);
  Nfa dom = cross(s, universal_dfa(s.alphabet).as_nfa(), cap);
  return intersect(t, dom, cap);
}

Nfa restrict_range(const Nfa& t, const Nfa& s, size_t cap) {
  require_pair(t);
  Nfa rng = cross(universal_dfa(s.alphabet).as_nfa(), s, cap);
  return intersect(t, rng, cap);
}

Nfa cross(const Nfa& a, const Nfa& b, size_t cap) {
  require_same_alphabet(a.alphabet, b.alphabet);
  AlphabetRef pa = pair_alphabet(a.alphabet);
  size_t sigma = a.alphabet->size();
  NfaIndex ia(a), ib(b);
  std::map<uint64_t, State> ids;
  std::vector<uint64_t> keys;
  auto intern = [&](State qa, State qb) -> State {
    uint64_t k = (static_cast<uint64_t>(qa) << 32) | qb;
    auto f = ids.find(k);
    if (f != ids.end()) return f->second;
    if (keys.size() >= cap) throw ResourceLimitError("cross: state cap exceeded");
    State id = static_cast<State>(keys.size());
    ids.emplace(k, id);
    keys.push_back(k);
    return id;
  };
  Nfa out;
  out.alphabet = pa;
  std::vector<bool> acc_a(a.num_states, false), acc_b(b.num_states, false);
  for (State q : a.accepting) acc_a[q] = true;
  for (State q : b.accepting) acc_b[q] = true;
  for (State qa : a.initial)
    for (State qb : b.initial) out.initial.push_back(intern(qa, qb));
  for (size_t i = 0; i < keys.size(); ++i) {
    State qa = static_cast<State>(keys[i] >> 32);
    State qb = static_cast<State>(keys[i] & 0xffffffffu);
    if (acc_a[qa] && acc_b[qb]) out.accepting.push_back(static_cast<State>(i));
    for (Sym x = 0; x < sigma; ++x) {
      auto ta = ia.targets(qa, x);
      if (ta.empty()) continue;
      for (Sym y = 0; y < sigma; ++y)
        for (State tb : ib.targets(qb, y))
          for (State sa : ta)
            out.transitions.push_back({static_cast<State>(i), pa->fuse(x, y), intern(sa, tb)});
    }
  }
  out.num_states = static_cast<uint32_t>(keys.size());
  out.normalize();
  return out;
}

Nfa cyclic_shift_closure(const Nfa& s) {
  // union over states q of L(q -> accepting) . L(initial -> q)
  Nfa out;
  out.alphabet = s.alphabet;
  uint32_t n = s.num_states;
  std::vector<bool> acc(n, false), init(n, false);
  for (State q : s.accepting) acc[q] = true;
  for (State q : s.initial) init[q] = true;

  for (State q = 0; q < n; ++q) {
    State off1 = out.num_states;     // copy 1: run q -> accepting
    State off2 = out.num_states + n; // copy 2: run initial -> q
    out.num_states += 2 * n;
    for (const Trans& t : s.transitions) {
      out.transitions.push_back({off1 + t.src, t.sym, off1 + t.dst});
      out.transitions.push_back({off2 + t.src, t.sym, off2 + t.dst});
      // bridge: finish a word of L1 and continue into L2
      if (acc[t.dst])
        for (State i : s.initial)
          out.transitions.push_back({off1 + t.src, t.sym, off2 + i});
    }
    out.initial.push_back(off1 + q);
    if (acc[q]) // epsilon in L1
      for (State i : s.initial) out.initial.push_back(off2 + i);
    out.accepting.push_back(off2 + q);
    if (init[q]) // epsilon in L2
      for (State f : s.accepting) out.accepting.push_back(off1 + f);
  }
  out.normalize();
  return out;
}

// --- enumeration -----------------------------------------------------------------

static void words_rec(const Dfa& d, State q, uint32_t remaining, Word& cur,
                      std::vector<Word>& out, size_t cap) {
  if (remaining == 0) {
    if (d.accept_tab[q]) {
      if (out.size() >= cap) throw ResourceLimitError("word enumeration cap exceeded");
      out.push_back(cur);
    }
    return;
  }
  for (Sym a = 0; a < d.alphabet->size(); ++a) {
    int32_t t = d.next(q, a);
    if (t < 0) continue;
    cur.push_back(a);
    words_rec(d, static_cast<State>(t), remaining - 1, cur, out, cap);
    cur.pop_back();
  }
}

std::vector<Word> words_of_length(const Dfa& d, uint32_t len, size_t cap) {
  std::vector<Word> out;
  Word cur;
  words_rec(d, d.initial, len, cur, out, cap);
  return out;
}

std::vector<Word> image_of_word(const Nfa& t, const Word& w, size_t cap) {
  Dfa d = image_dfa(t, w, cap);
  return words_of_length(d, static_cast<uint32_t>(w.size()), cap);
}

Dfa image_dfa(const Nfa& t, const Word& w, size_t cap) {
  require_pair(t);
  size_t bs = t.alphabet->base_size();
  // output automaton: states (position, t-state); reads the second track
  Nfa out;
  size_t base_count = 0;
  {
    // rebuild base alphabet names
    std::vector<std::string> names;
    for (size_t i = 0; i < bs; ++i) {
      const std::string& pn = t.alphabet->name(t.alphabet->fuse(static_cast<Sym>(i), 0));
      names.push_back(pn.substr(0, pn.rfind('/')));
    }
    base_count = names.size();
    out.alphabet = make_alphabet(std::move(names));
  }
  NfaIndex it_(t);
  uint32_t len = static_cast<uint32_t>(w.size());
  out.num_states = (len + 1) * t.num_states;
  auto st = [&](uint32_t pos, State q) { return pos * t.num_states + q; };
  for (State q : t.initial) out.initial.push_back(st(0, q));
  for (uint32_t pos = 0; pos < len; ++pos)
    for (State q = 0; q < t.num_states; ++q)
      for (Sym b = 0; b < base_count; ++b)
        for (State tq : it_.targets(q, t.alphabet->fuse(w[pos], static_cast<Sym>(b))))
          out.transitions.push_back({st(pos, q), static_cast<Sym>(b), st(pos + 1, tq)});
  for (State q : t.accepting) out.accepting.push_back(st(len, q));
  out.normalize();
  return minimize(determinize(out, cap));
}

// --- dumps -----------------------------------------------------------------------

void print_dfa(std::ostream& out, const Dfa& d) {
  out << "dfa " << d.num_states << ' ';
  for (size_t i = 0; i < d.alphabet->size(); ++i) {
    if (i) out << ',';
    out << d.alphabet->name(static_cast<Sym>(i));
  }
  out << '\n';
  for (State q = 0; q < d.num_states; ++q)
    for (Sym a = 0; a < d.alphabet->size(); ++a) {
      int32_t t = d.next(q, a);
      if (t >= 0) out << q << ' ' << d.alphabet->name(a) << ' ' << t << '\n';
    }
  out << "init " << d.initial << '\n';
  out << "accept";
  for (State q = 0; q < d.num_states; ++q)
    if (d.accept_tab[q]) out << ' ' << q;
  out << '\n';
}

std::string dfa_to_string(const Dfa& d) {
  std::ostringstream os;
  print_dfa(os, d);
  return os.str();
}

static std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

Dfa parse_dfa(const std::vector<std::string>& lines, size_t& pos) {
  while (pos < lines.size() && split_ws(lines[pos]).empty()) ++pos;
  if (pos >= lines.size()) throw std::runtime_error("dfa dump: unexpected end of input");
  auto header = split_ws(lines[pos]);
  if (header.size() != 3 || header[0] != "dfa")
    throw std::runtime_error("dfa dump: bad header at line " + std::to_string(pos + 1));
  uint32_t n = static_cast<uint32_t>(std::stoul(header[1]));
  std::vector<std::string> letters;
  {
    std::string csv = header[2];
    size_t start = 0;
    while (start <= csv.size()) {
      size_t comma = csv.find(',', start);
      if (comma == std::string::npos) {
        letters.push_back(csv.substr(start));
        break;
      }
      letters.push_back(csv.substr(start, comma - start));
      start = comma + 1;
    }
  }
  Dfa d;
  d.alphabet = make_alphabet(letters);
  d.num_states = std::max(n, 1u);
  d.next_tab.assign(d.num_states * d.alphabet->size(), -1);
  d.accept_tab.assign(d.num_states, false);
  ++pos;
  bool saw_init = false, saw_accept = false;
  while (pos < lines.size() && !saw_accept) {
    auto toks = split_ws(lines[pos]);
    ++pos;
    if (toks.empty()) continue;
    if (toks[0] == "init") {
      if (toks.size() != 2) throw std::runtime_error("dfa dump: bad init line");
      d.initial = static_cast<State>(std::stoul(toks[1]));
      saw_init = true;
    } else if (toks[0] == "accept") {
      for (size_t i = 1; i < toks.size(); ++i)
        d.accept_tab.at(std::stoul(toks[i])) = true;
      saw_accept = true;
    } else {
      if (toks.size() != 3) throw std::runtime_error("dfa dump: bad transition line");
      State q = static_cast<State>(std::stoul(toks[0]));
      auto a = d.alphabet->find(toks[1]);
      if (!a) throw std::runtime_error("dfa dump: unknown letter " + toks[1]);
      State t = static_cast<State>(std::stoul(toks[2]));
      if (q >= d.num_states || t >= d.num_states)
        throw std::runtime_error("dfa dump: state out of range");
      int32_t& slot = d.next_tab[q * d.alphabet->size() + *a];
      if (slot >= 0) throw std::runtime_error("dfa dump: duplicate transition (not deterministic)");
      slot = static_cast<int32_t>(t);
    }
  }
  if (!saw_init || !saw_accept) throw std::runtime_error("dfa dump: missing init/accept line");
  if (d.initial >= d.num_states) throw std::runtime_error("dfa dump: initial state out of range");
  return d;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "(empty)";
  bool single = true;
  for (const std::string& n : alphabet.letters())
    if (n.size() != 1) single = false;
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

} // namespace regliv
