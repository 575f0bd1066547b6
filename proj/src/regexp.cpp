#include "regexp.hpp"

#include <algorithm>
#include <cassert>

namespace regliv {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' ||
         c == '<' || c == '>' || c == '\'' || c == '-' || c == '.';
}

// epsilon-NFA builder; fragments are (start, end) pairs
struct Builder {
  struct ETrans {
    State src;
    int64_t sym; // -1 = epsilon
    State dst;
  };
  std::vector<ETrans> trans;
  State next_state = 0;

  State fresh() { return next_state++; }
  void edge(State a, int64_t s, State b) { trans.push_back({a, s, b}); }
};

struct Frag {
  State start;
  State end;
};

struct Parser {
  const std::string& text;
  size_t pos = 0;
  int line;
  int col = 1;
  const AlphabetRef& base;
  AlphabetRef target; // base or pairs(base)
  bool allow_pairs;
  Builder b;

  Parser(const std::string& t, const AlphabetRef& base_, bool pairs_, int line_offset)
      : text(t), line(line_offset), base(base_), allow_pairs(pairs_) {
    target = pairs_ ? pair_alphabet(base_) : base_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        advance();
      } else if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else {
        break;
      }
    }
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  // greedy longest-match segmentation of a name run into declared letters
  std::vector<Sym> segment(const std::string& run) {
    std::vector<Sym> out;
    size_t at = 0;
    while (at < run.size()) {
      size_t take = run.size() - at;
      for (; take > 0; --take) {
        auto s = base->find(std::string_view(run).substr(at, take));
        if (s) {
          out.push_back(*s);
          break;
        }
      }
      if (take == 0) fail("unknown letter '" + run.substr(at) + "'");
      at += take;
    }
    return out;
  }

  std::string read_name_run() {
    std::string run;
    while (pos < text.size() && is_name_char(text[pos])) {
      run += text[pos];
      advance();
    }
    if (run.empty()) fail("expected a letter");
    return run;
  }

  Frag atom() {
    char c = peek();
    if (c == '~') { // the empty language
      advance();
      return {b.fresh(), b.fresh()};
    }
    if (c == '(') {
      advance();
      Frag f = expr();
      if (peek() != ')') fail("unclosed parenthesis");
      advance();
      return f;
    }
    if (!is_name_char(c)) fail("unexpected character");
    std::string run = read_name_run();
    if (pos < text.size() && text[pos] == '/') {
      if (!allow_pairs) fail("pair letter not allowed in a set-valued field");
      advance();
      std::string run2 = read_name_run();
      auto a = base->find(run);
      if (!a) fail("unknown letter '" + run + "' in pair");
      auto bsym = base->find(run2);
      if (!bsym) fail("unknown letter '" + run2 + "' in pair");
      Frag f{b.fresh(), b.fresh()};
      b.edge(f.start, target->fuse(*a, *bsym), f.end);
      return f;
    }
    if (allow_pairs) fail("plain letter '" + run + "' in a relation field (use a/b)");
    std::vector<Sym> syms = segment(run);
    Frag f{b.fresh(), b.fresh()};
    State cur = f.start;
    for (size_t i = 0; i < syms.size(); ++i) {
      State nxt = (i + 1 == syms.size()) ? f.end : b.fresh();
      b.edge(cur, syms[i], nxt);
      cur = nxt;
    }
    if (syms.empty()) b.edge(f.start, -1, f.end);
    return f;
  }

  Frag factor() {
    Frag f = atom();
    for (;;) {
      char c = peek();
      if (c == '*') {
        advance();
        Frag g{b.fresh(), b.fresh()};
        b.edge(g.start, -1, g.end);
        b.edge(g.start, -1, f.start);
        b.edge(f.end, -1, f.start);
        b.edge(f.end, -1, g.end);
        f = g;
      } else if (c == '+') {
        advance();
        Frag g{b.fresh(), b.fresh()};
        b.edge(g.start, -1, f.start);
        b.edge(f.end, -1, f.start);
        b.edge(f.end, -1, g.end);
        f = g;
      } else if (c == '?') {
        advance();
        Frag g{b.fresh(), b.fresh()};
        b.edge(g.start, -1, g.end);
        b.edge(g.start, -1, f.start);
        b.edge(f.end, -1, g.end);
        f = g;
      } else {
        break;
      }
    }
    return f;
  }

  bool at_term_start() {
    char c = peek();
    return c == '(' || c == '~' || is_name_char(c);
  }

  Frag term() {
    if (!at_term_start()) {
      Frag f{b.fresh(), b.fresh()};
      b.edge(f.start, -1, f.end);
      return f;
    }
    Frag f = factor();
    while (at_term_start()) {
      Frag g = factor();
      b.edge(f.end, -1, g.start);
      f = {f.start, g.end};
    }
    return f;
  }

  Frag expr() {
    Frag f = term();
    while (peek() == '|') {
      advance();
      Frag g = term();
      Frag h{b.fresh(), b.fresh()};
      b.edge(h.start, -1, f.start);
      b.edge(h.start, -1, g.start);
      b.edge(f.end, -1, h.end);
      b.edge(g.end, -1, h.end);
      f = h;
    }
    return f;
  }

  Nfa finish(Frag f) {
    uint32_t n = b.next_state;
    std::vector<std::vector<State>> eps(n);
    for (const auto& t : b.trans)
      if (t.sym < 0) eps[t.src].push_back(t.dst);
    std::vector<std::vector<State>> closure(n);
    for (State q = 0; q < n; ++q) {
      std::vector<bool> seen(n, false);
      std::vector<State> stack{q};
      seen[q] = true;
      while (!stack.empty()) {
        State x = stack.back();
        stack.pop_back();
        closure[q].push_back(x);
        for (State y : eps[x])
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
      }
    }
    Nfa out;
    out.alphabet = target;
    out.num_states = n;
    for (State q : closure[f.start]) out.initial.push_back(q);
    for (const auto& t : b.trans) {
      if (t.sym < 0) continue;
      for (State d : closure[t.dst])
        out.transitions.push_back({t.src, static_cast<Sym>(t.sym), d});
    }
    std::vector<bool> acc(n, false);
    acc[f.end] = true;
    for (State q = 0; q < n; ++q)
      if (std::any_of(closure[q].begin(), closure[q].end(), [&](State x) { return acc[x]; }))
        out.accepting.push_back(q);
    out.normalize();
    return out;
  }
};

} // namespace

Nfa parse_regex(const std::string& text, const AlphabetRef& base, bool allow_pairs,
                int line_offset) {
  Parser p(text, base, allow_pairs, line_offset);
  Frag f = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return p.finish(f);
}

// --- dfa -> regex (state elimination) ------------------------------------------

namespace {

struct Rx {
  static std::string empty() { return "~"; }
  static bool is_empty(const std::string& s) { return s == "~"; }
  static std::string eps() { return ""; }

  static std::string alt(const std::string& a, const std::string& b) {
    if (is_empty(a)) return b;
    if (is_empty(b)) return a;
    if (a == b) return a;
    return a + "|" + b;
  }
  static bool atomic(const std::string& s) {
    if (s.size() <= 1) return true;
    if (s.front() == '(' && s.back() == ')') {
      int depth = 0;
      for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') {
          --depth;
          if (depth == 0 && i + 1 != s.size()) return false;
        }
      }
      return true;
    }
    return s.find('|') == std::string::npos && s.find(' ') == std::string::npos &&
           std::all_of(s.begin(), s.end(), [](char c) { return is_name_char(c) || c == '/'; });
  }
  static std::string group(const std::string& s) { return atomic(s) ? s : "(" + s + ")"; }
  static std::string cat(const std::string& a, const std::string& b) {
    if (is_empty(a) || is_empty(b)) return empty();
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::string ga = a.find('|') != std::string::npos ? group(a) : a;
    std::string gb = b.find('|') != std::string::npos ? group(b) : b;
    return ga + " " + gb;
  }
  static std::string star(const std::string& a) {
    if (is_empty(a) || a.empty()) return eps();
    return group(a) + "*";
  }
};

} // namespace

std::string dfa_to_regex(const Dfa& d) {
  size_t sigma = d.alphabet->size();
  uint32_t n = d.num_states;
  std::vector<std::vector<std::string>> e(n + 2, std::vector<std::string>(n + 2, Rx::empty()));
  for (State q = 0; q < n; ++q)
    for (Sym a = 0; a < sigma; ++a) {
      int32_t t = d.next(q, a);
      if (t >= 0) e[q][t] = Rx::alt(e[q][t], d.alphabet->name(a));
    }
  e[n][d.initial] = Rx::eps();
  for (State q = 0; q < n; ++q)
    if (d.accept_tab[q]) e[q][n + 1] = Rx::eps();

  std::vector<bool> alive(n + 2, true);
  for (State k = 0; k < n; ++k) {
    alive[k] = false;
    std::string loop = Rx::star(e[k][k]);
    for (uint32_t i = 0; i < n + 2; ++i) {
      if (!alive[i] || Rx::is_empty(e[i][k])) continue;
      for (uint32_t j = 0; j < n + 2; ++j) {
        if (!alive[j] || Rx::is_empty(e[k][j])) continue;
        e[i][j] = Rx::alt(e[i][j], Rx::cat(e[i][k], Rx::cat(loop, e[k][j])));
      }
    }
  }
  std::string r = e[n][n + 1];
  if (r.empty()) return "()";
  return r;
}

} // namespace regliv
