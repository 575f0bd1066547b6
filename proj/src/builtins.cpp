// Built-in protocol and game encodings. Each builtin is an ordinary model
// text fed through parse_model, so the file format exercises the same code
// path as user models. The texts for nim and lehmann-rabin are generated
// from rule tables to keep them maintainable.

#include <map>
#include <sstream>

#include "model.hpp"

namespace regliv {

namespace {

// --- flip ----------------------------------------------------------------
//
// The canonical toy. Configurations are words over {0,1,m}: the Scheduler
// marks one 0 (letter m), the Process flips the marked position to 1.
// Starting from all zeros, every word of ones is reached with certainty.
const char* kFlip = R"(# flip: mark a zero, then flip it to one
alphabet: 0, 1, m;
states: (0|1)* | (0|1)* m (0|1)*;
initial: 0 0*;
final: 1*;
player1: (0/0 | 1/1)* 0/m (0/0 | 1/1)*;
player2: (0/0 | 1/1)* m/1 (0/0 | 1/1)*;
)";

// --- israeli-jalfon --------------------------------------------------------
//
// Token ring: o = no token, t = token, T = scheduled token. The scheduled
// process passes its token left or right; tokens merge. Final: exactly one
// token. The two trailing player2 alternatives wrap around the ring.
// Length-one marked words are excluded from the state space (a ring of one
// process cannot pass anywhere).
const char* kIsraeliJalfon = R"(# israeli-jalfon token ring
alphabet: o, t, T;
states: (o|t)* t (o|t)*
      | (o|t) (o|t)* T (o|t)*
      | (o|t)* T (o|t) (o|t)*;
initial: (o|t)* t (o|t)*;
final: o* t o*;
player1: (o/o | t/t)* t/T (o/o | t/t)*;
player2: (o/o | t/t)* T/o (o/t | t/t) (o/o | t/t)*
       | (o/o | t/t)* (o/t | t/t) T/o (o/o | t/t)*
       | (o/t | t/t) (o/o | t/t)* T/o
       | T/o (o/o | t/t)* (o/t | t/t);
symmetry: rotation;
)";

// --- herman-line ------------------------------------------------------------
//
// Same alphabet as israeli-jalfon, but the processes sit on a line: no
// wrap-around moves, endpoints have a single passing direction. This version
// satisfies liveness under all schedulers (the ring version does not).
const char* kHermanLine = R"(# herman, line topology
alphabet: o, t, T;
states: (o|t)* t (o|t)*
      | (o|t) (o|t)* T (o|t)*
      | (o|t)* T (o|t) (o|t)*;
initial: (o|t)* t (o|t)*;
final: o* t o*;
player1: (o/o | t/t)* t/T (o/o | t/t)*;
player2: (o/o | t/t)* T/o (o/t | t/t) (o/o | t/t)*
       | (o/o | t/t)* (o/t | t/t) T/o (o/o | t/t)*;
)";

// --- take-away ----------------------------------------------------------------
//
// Subtraction game: remove 1-3 chips per move, the player taking the last
// chip wins. Unary pile of c's, consumed chips become x; the first letter is
// the turn marker (a = Player 1 to move). Finals are the positions where
// Player 2 just emptied the pile. Initial positions are the multiples of
// four, which are exactly the Player-2 wins by backward induction.
const char* kTakeAway = R"(# take-away (subtraction game, 1..3 chips)
alphabet: a, b, c, x;
states: (a|b) (c c* x* | x x*);
initial: a c c c c (c c c c)* x* | a x x*;
final: a x x*;
player1: a/b (c/c)* (c/x | c/x c/x | c/x c/x c/x) (x/x)*;
player2: b/a (c/c)* (c/x | c/x c/x | c/x c/x c/x) (x/x)*;
)";

// --- nim -------------------------------------------------------------------------
//
// Three piles in binary, little-endian bit planes: letter nXYZ carries one
// bit of each pile. A move strictly decreases exactly one pile, i.e. on that
// track the most significant changed bit goes from 1 to 0 (positionally: the
// last non-equal pair letter is a drop). Initial positions are the zero-XOR
// words, the classical P-positions.
std::string generate_nim() {
  auto letter = [](int x, int y, int z) {
    return "n" + std::to_string(x) + std::to_string(y) + std::to_string(z);
  };
  std::vector<std::string> bits;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) bits.push_back(letter(x, y, z));

  auto join = [](const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) out += sep;
      out += v[i];
    }
    return out;
  };

  // per-track pair-letter classes: same / up / drop with the other two
  // tracks fixed
  auto track_classes = [&](int track) {
    std::vector<std::string> same, up, drop;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) {
          int b[3] = {x, y, z};
          int c[3] = {x, y, z};
          same.push_back(letter(x, y, z) + "/" + letter(x, y, z));
          b[track] = 1;
          c[track] = 0;
          drop.push_back(letter(b[0], b[1], b[2]) + "/" + letter(c[0], c[1], c[2]));
          up.push_back(letter(c[0], c[1], c[2]) + "/" + letter(b[0], b[1], b[2]));
        }
    // dedupe (same list contains each diagonal twice per track loop above)
    std::sort(same.begin(), same.end());
    same.erase(std::unique(same.begin(), same.end()), same.end());
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    std::sort(drop.begin(), drop.end());
    drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
    return std::tuple{join(same, " | "), join(up, " | "), join(drop, " | ")};
  };

  std::string any_bit = join(bits, "|");
  std::vector<std::string> xor0 = {letter(0, 0, 0), letter(0, 1, 1), letter(1, 0, 1),
                                   letter(1, 1, 0)};

  std::ostringstream os;
  os << "# nim, three piles, binary bit planes (little-endian)\n";
  os << "alphabet: a, b, " << join(bits, ", ") << ";\n";
  os << "states: (a|b) (" << any_bit << ") (" << any_bit << ")*;\n";
  os << "initial: a (" << join(xor0, "|") << ") (" << join(xor0, "|") << ")*;\n";
  os << "final: a n000 n000*;\n";
  for (int player = 1; player <= 2; ++player) {
    os << "player" << player << ":\n";
    std::string turn = player == 1 ? "a/b" : "b/a";
    for (int track = 0; track < 3; ++track) {
      auto [same, up, drop] = track_classes(track);
      os << (track == 0 ? "    " : "  | ") << turn << " (" << same << " | " << up << " | "
         << drop << ")* (" << drop << ") (" << same << ")*\n";
    }
    os << ";\n";
  }
  return os.str();
}

// --- lehmann-rabin -----------------------------------------------------------
//
// Randomised dining philosophers on a ring, the variant without idle
// transitions. Letters: T thinking, H hungry, Wl/Wr waiting for the
// left/right fork, Sl/Sr holding left/right and waiting for the other,
// Dl/Dr about to put the held fork back, E eating. Hatted copies mark the
// scheduled process. The scheduler may only pick processes with an enabled
// rule; guards inspect the neighbour sharing the contested fork.
struct LrRule {
  std::string from, to;
  int guard_side;                  // 0 none, -1 left neighbour, +1 right neighbour
  std::vector<std::string> guard;  // allowed neighbour letters
};

std::string generate_lr() {
  const std::vector<std::string> base = {"T", "H", "Wl", "Wr", "Sl", "Sr", "Dl", "Dr", "E"};
  const std::vector<std::string> holdl = {"Sl", "Dl", "E"}; // holds its left fork
  const std::vector<std::string> holdr = {"Sr", "Dr", "E"}; // holds its right fork
  auto complement = [&](const std::vector<std::string>& set) {
    std::vector<std::string> out;
    for (const auto& l : base)
      if (std::find(set.begin(), set.end(), l) == set.end()) out.push_back(l);
    return out;
  };
  const std::vector<std::string> nholdl = complement(holdl);
  const std::vector<std::string> nholdr = complement(holdr);

  std::vector<LrRule> rules = {
      {"T", "H", 0, {}},
      {"H", "Wl", 0, {}},
      {"H", "Wr", 0, {}},
      {"Wl", "Sl", -1, nholdr}, // left fork free iff left neighbour lacks its right fork
      {"Wr", "Sr", +1, nholdl},
      {"Sl", "E", +1, nholdl},  // right fork free iff right neighbour lacks its left fork
      {"Sl", "Dl", +1, holdl},
      {"Sr", "E", -1, nholdr},
      {"Sr", "Dr", -1, holdr},
      {"Dl", "H", 0, {}},
      {"Dr", "H", 0, {}},
  };

  auto hat = [](const std::string& l) { return l + "^"; };
  std::string idiag; // diagonal over the base letters
  for (size_t i = 0; i < base.size(); ++i)
    idiag += (i ? " | " : "") + base[i] + "/" + base[i];
  idiag = "(" + idiag + ")";
  std::string anyb;
  for (size_t i = 0; i < base.size(); ++i) anyb += (i ? "|" : "") + base[i];
  anyb = "(" + anyb + ")";

  std::ostringstream alpha;
  for (const auto& l : base) alpha << l << ", ";
  std::vector<std::string> hatted;
  for (const auto& l : base)
    if (l != "E") hatted.push_back(hat(l)); // E has no rule, so no hatted copy
  for (size_t i = 0; i < hatted.size(); ++i) alpha << (i ? ", " : "") << hatted[i];

  // group rules by hatted letter to build guard sets for the scheduler
  std::map<std::string, std::vector<const LrRule*>> by_from;
  for (const auto& r : rules) by_from[r.from].push_back(&r);

  std::vector<std::string> marks;   // player1 alternatives
  std::vector<std::string> steps;   // player2 alternatives
  std::vector<std::string> smarked; // marked state-space alternatives (length >= 3)

  const std::string A = anyb;
  // words of length >= 3 containing the single-letter pattern x
  auto pad1 = [&](const std::string& x) {
    return std::vector<std::string>{A + " " + A + " " + A + "* " + x + " " + A + "*",
                                    A + " " + A + "* " + x + " " + A + " " + A + "*",
                                    x + " " + A + " " + A + " " + A + "*"};
  };
  // words of length >= 3 containing the two-letter block
  auto pad2 = [&](const std::string& block) {
    return std::vector<std::string>{A + " " + A + "* " + block + " " + A + "*",
                                    A + "* " + block + " " + A + " " + A + "*"};
  };
  auto push_all = [](std::vector<std::string>& dst, const std::vector<std::string>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
  };

  for (const auto& [from, rs] : by_from) {
    bool always = false; // letter enabled regardless of neighbours
    for (const LrRule* r : rs)
      if (r->guard_side == 0) always = true;
    std::vector<std::string> guard_union;
    for (const LrRule* r : rs)
      for (const auto& l : r->guard) guard_union.push_back(l);
    std::sort(guard_union.begin(), guard_union.end());
    guard_union.erase(std::unique(guard_union.begin(), guard_union.end()), guard_union.end());
    if (guard_union.size() == base.size()) always = true;

    std::string mark = from + "/" + hat(from);
    if (always) {
      marks.push_back(idiag + "* " + mark + " " + idiag + "*");
      push_all(smarked, pad1(hat(from)));
    } else {
      int side = rs[0]->guard_side;
      std::string gd, ga;
      for (size_t i = 0; i < guard_union.size(); ++i) {
        gd += (i ? " | " : "") + guard_union[i] + "/" + guard_union[i];
        ga += (i ? "|" : "") + guard_union[i];
      }
      gd = "(" + gd + ")";
      ga = "(" + ga + ")";
      if (side < 0) { // guard letter sits left of the marked one
        marks.push_back(idiag + "* " + gd + " " + mark + " " + idiag + "*");
        marks.push_back(mark + " " + idiag + "* " + gd); // ring wrap
        push_all(smarked, pad2(ga + " " + hat(from)));
        smarked.push_back(hat(from) + " " + A + " " + A + "* " + ga); // wrap, length >= 3
      } else {
        marks.push_back(idiag + "* " + mark + " " + gd + " " + idiag + "*");
        marks.push_back(gd + " " + idiag + "* " + mark);
        push_all(smarked, pad2(hat(from) + " " + ga));
        smarked.push_back(ga + " " + A + " " + A + "* " + hat(from));
      }
    }
    for (const LrRule* r : rs) {
      std::string step = hat(r->from) + "/" + r->to;
      if (r->guard_side == 0) {
        steps.push_back(idiag + "* " + step + " " + idiag + "*");
      } else {
        std::string gd;
        for (size_t i = 0; i < r->guard.size(); ++i)
          gd += (i ? " | " : "") + r->guard[i] + "/" + r->guard[i];
        gd = "(" + gd + ")";
        if (r->guard_side < 0) {
          steps.push_back(idiag + "* " + gd + " " + step + " " + idiag + "*");
          steps.push_back(step + " " + idiag + "* " + gd);
        } else {
          steps.push_back(idiag + "* " + step + " " + gd + " " + idiag + "*");
          steps.push_back(gd + " " + idiag + "* " + step);
        }
      }
    }
  }

  std::ostringstream os;
  os << "# lehmann-rabin dining philosophers (no idle transitions)\n";
  os << "alphabet: " << alpha.str() << ";\n";
  // rings of at least three philosophers
  os << "states: " << A << " " << A << " " << A << " " << A << "*\n";
  for (const auto& s : smarked) os << "      | " << s << "\n";
  os << ";\n";
  os << "initial: T T T T*;\n";
  os << "final:";
  {
    auto f = pad1("E");
    for (size_t i = 0; i < f.size(); ++i) os << (i ? " | " : " ") << f[i];
  }
  os << ";\n";
  os << "player1:\n";
  for (size_t i = 0; i < marks.size(); ++i)
    os << (i ? "  | " : "    ") << marks[i] << "\n";
  os << ";\n";
  os << "player2:\n";
  for (size_t i = 0; i < steps.size(); ++i)
    os << (i ? "  | " : "    ") << steps[i] << "\n";
  os << ";\n";
  os << "symmetry: rotation;\n";
  return os.str();
}

} // namespace

std::vector<std::string> builtin_model_names() {
  return {"flip", "israeli-jalfon", "herman-line", "lehmann-rabin", "take-away", "nim"};
}

bool builtin_needs_game_profile(const std::string& name) {
  return name == "take-away" || name == "nim";
}

GameInstance builtin_model(const std::string& name) {
  if (name == "flip") return parse_model(kFlip, name);
  if (name == "israeli-jalfon") return parse_model(kIsraeliJalfon, name);
  if (name == "herman-line") return parse_model(kHermanLine, name);
  if (name == "take-away") return parse_model(kTakeAway, name);
  if (name == "nim") return parse_model(generate_nim(), name);
  if (name == "lehmann-rabin") return parse_model(generate_lr(), name);
  throw std::runtime_error("unknown builtin model: " + name +
                           " (available: flip, israeli-jalfon, herman-line, lehmann-rabin, "
                           "take-away, nim)");
}

} // namespace regliv
