#include "model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "regexp.hpp"

namespace regliv {

namespace {

struct Section {
  std::string name;
  std::string body;
  int line; // 1-based line of the body start
};

// split the file into `name: body;` sections, tracking line numbers
std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> out;
  size_t pos = 0;
  int line = 1;
  auto advance_over = [&](size_t upto) {
    for (; pos < upto; ++pos)
      if (text[pos] == '\n') ++line;
  };
  while (pos < text.size()) {
    // skip whitespace and comments
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        if (text[pos] == '\n') ++line;
        ++pos;
      } else if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    if (pos >= text.size()) break;
    size_t colon = text.find(':', pos);
    if (colon == std::string::npos)
      throw ParseError("expected 'section:'", line, 1);
    std::string name = text.substr(pos, colon - pos);
    // trim
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
      name.pop_back();
    advance_over(colon);
    pos = colon + 1;
    int body_line = line;
    size_t semi = pos;
    // find the terminating ';' outside comments
    for (;;) {
      if (semi >= text.size()) throw ParseError("missing ';' after section " + name, line, 1);
      if (text[semi] == '#') {
        while (semi < text.size() && text[semi] != '\n') ++semi;
        continue;
      }
      if (text[semi] == ';') break;
      ++semi;
    }
    std::string body = text.substr(pos, semi - pos);
    advance_over(semi);
    pos = semi + 1;
    out.push_back({name, body, body_line});
  }
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Dfa build_set(const std::string& body, const AlphabetRef& alphabet, int line) {
  Nfa n = parse_regex(body, alphabet, /*allow_pairs=*/false, line);
  return minimize(determinize(n));
}

Nfa build_relation(const std::string& body, const AlphabetRef& alphabet, int line) {
  return parse_regex(body, alphabet, /*allow_pairs=*/true, line);
}

} // namespace

Nfa GameInstance::symmetry_relation() const {
  if (!symmetry) throw std::runtime_error("model declares no symmetry");
  if (symmetry->kind == SymmetryDecl::Kind::rotation) return rotation_relation(alphabet);
  return *symmetry->sigma;
}

GameInstance parse_model(const std::string& text, const std::string& name) {
  auto sections = split_sections(text);
  GameInstance g;
  g.name = name;

  std::optional<std::string> states_body;
  int states_line = 1;
  std::optional<Nfa> move1, move2;
  std::optional<Dfa> initial, final_;

  for (const Section& s : sections) {
    if (s.name == "alphabet") {
      std::vector<std::string> letters;
      std::istringstream is(s.body);
      std::string item;
      while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ParseError("empty letter in alphabet", s.line, 1);
        letters.push_back(item);
      }
      g.alphabet = make_alphabet(std::move(letters));
      g.pair_letters = pair_alphabet(g.alphabet);
    } else if (s.name == "states") {
      states_body = s.body;
      states_line = s.line;
    } else if (s.name == "initial" || s.name == "final" || s.name == "player1" ||
               s.name == "player2") {
      if (!g.alphabet) throw ParseError("alphabet must be declared first", s.line, 1);
      if (s.name == "initial")
        initial = build_set(s.body, g.alphabet, s.line);
      else if (s.name == "final")
        final_ = build_set(s.body, g.alphabet, s.line);
      else if (s.name == "player1")
        move1 = build_relation(s.body, g.alphabet, s.line);
      else
        move2 = build_relation(s.body, g.alphabet, s.line);
    } else if (s.name == "symmetry") {
      std::string kind = trim(s.body);
      if (kind != "rotation")
        throw ParseError("unknown symmetry '" + kind + "' (supported: rotation)", s.line, 1);
      g.symmetry = SymmetryDecl{SymmetryDecl::Kind::rotation, std::nullopt};
    } else {
      throw ParseError("unknown section '" + s.name + "'", s.line, 1);
    }
  }
  if (!g.alphabet) throw ParseError("missing alphabet section", 1, 1);
  if (!initial) throw ParseError("missing initial section", 1, 1);
  if (!final_) throw ParseError("missing final section", 1, 1);
  if (!move1) throw ParseError("missing player1 section", 1, 1);
  if (!move2) throw ParseError("missing player2 section", 1, 1);
  g.initial = std::move(*initial);
  g.final = std::move(*final_);

  if (states_body) {
    g.states = build_set(*states_body, g.alphabet, states_line);
  } else {
    // default: union of the declared sets with the domains and ranges of the
    // relations, closed under both moves
    Nfa u = unite(g.initial.as_nfa(), g.final.as_nfa());
    u = unite(u, project(*move1, 1));
    u = unite(u, project(*move1, 2));
    u = unite(u, project(*move2, 1));
    u = unite(u, project(*move2, 2));
    Dfa s = minimize(determinize(u));
    Nfa any = unite(*move1, *move2);
    for (;;) {
      Nfa post = apply(any, s.as_nfa());
      Dfa snew = minimize(determinize(unite(s.as_nfa(), post)));
      if (equivalent(snew, s)) break;
      s = snew;
    }
    g.states = s;
  }

  // restrict moves to S x S
  Nfa ss = cross(g.states.as_nfa(), g.states.as_nfa());
  g.move1 = intersect(*move1, ss);
  g.move2 = intersect(*move2, ss);
  g.move_any = unite(g.move1, g.move2);

  g.owner2 = minimize(determinize(unite(project(g.move2, 1), project(g.move1, 2))));
  g.owner1 = minimize(determinize(difference(g.states.as_nfa(), g.owner2)));
  return g;
}

GameInstance load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  size_t slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return parse_model(ss.str(), base);
}

std::string print_model(const GameInstance& g) {
  std::ostringstream os;
  os << "alphabet: ";
  for (size_t i = 0; i < g.alphabet->size(); ++i) {
    if (i) os << ", ";
    os << g.alphabet->name(static_cast<Sym>(i));
  }
  os << ";\n";
  os << "states: " << dfa_to_regex(g.states) << ";\n";
  os << "initial: " << dfa_to_regex(g.initial) << ";\n";
  os << "final: " << dfa_to_regex(g.final) << ";\n";
  os << "player1: " << dfa_to_regex(minimize(determinize(g.move1))) << ";\n";
  os << "player2: " << dfa_to_regex(minimize(determinize(g.move2))) << ";\n";
  if (g.symmetry) os << "symmetry: rotation;\n";
  return os.str();
}

ValidationReport validate(const GameInstance& g, bool game_profile) {
  ValidationReport r;
  auto check_incl = [&](const std::string& code, const Dfa& sup, const Nfa& sub,
                        const std::string& detail) {
    Word w;
    bool ok = includes(sup, sub, &w);
    r.checks.push_back({code, ok, ok ? std::nullopt : std::optional<Word>(w), detail});
  };

  check_incl("initial-in-states", g.states, g.initial.as_nfa(), "I0 must lie in S");
  check_incl("final-in-states", g.states, g.final.as_nfa(), "F must lie in S");

  // ownership consistency: domain(move1) and range(move2) avoid V2
  check_incl("A0-move1-domain", g.owner1, project(g.move1, 1),
             "Scheduler moves start in Player-1 configurations");
  check_incl("A0-move2-range", g.owner1, project(g.move2, 2),
             "Process moves end in Player-1 configurations");

  check_incl("A1-initial", g.owner1, g.initial.as_nfa(),
             "initial configurations belong to Player 1");
  check_incl("A1-final", g.owner1, g.final.as_nfa(), "final configurations belong to Player 1");

  // A2: non-final configurations have a move
  Nfa pre = unite(project(g.move1, 1), project(g.move2, 1));
  Dfa pre_d = minimize(determinize(pre));
  Nfa nonfinal = difference(g.states.as_nfa(), g.final);
  if (game_profile) nonfinal = intersect(nonfinal, g.owner1.as_nfa());
  Word w;
  bool ok = includes(pre_d, nonfinal, &w);
  r.checks.push_back({game_profile ? "A2-player1" : "A2", ok,
                      ok ? std::nullopt : std::optional<Word>(w),
                      "non-final configurations are no dead ends"});
  return r;
}

GameInstance resolve_model(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe.good()) return load_model_file(arg);
  return builtin_model(arg);
}

} // namespace regliv
