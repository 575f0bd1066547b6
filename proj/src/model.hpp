// model.hpp -- game-model file format and structural validation.
//
// A model file has the sections
//
//   alphabet: a, b, c;
//   states:   <regex>;          (optional; default derived from the others)
//   initial:  <regex>;
//   final:    <regex>;
//   player1:  <pair regex>;
//   player2:  <pair regex>;
//   symmetry: rotation;         (optional)
//
// `#` starts a line comment. Relations use pair letters a/b; the set-valued
// sections use plain letters. Both move relations are intersected with S x S
// when the instance is built.

#pragma once

#include <optional>
#include <string>

#include "automata.hpp"

namespace regliv {

struct SymmetryDecl {
  enum class Kind { rotation, transducer };
  Kind kind = Kind::rotation;
  std::optional<Nfa> sigma; // for Kind::transducer
};

struct GameInstance {
  std::string name;
  AlphabetRef alphabet;
  AlphabetRef pair_letters;
  Dfa states;  // S
  Dfa initial; // I0
  Dfa final;   // F
  Nfa move1;   // Scheduler, restricted to S x S
  Nfa move2;   // Process, restricted to S x S
  std::optional<SymmetryDecl> symmetry;

  // derived at build time
  Dfa owner2; // V2 = domain(move2) | range(move1)
  Dfa owner1; // V1 = S \ V2
  Nfa move_any;

  Nfa symmetry_relation() const; // rotation or the declared transducer
};

GameInstance parse_model(const std::string& text, const std::string& name = "model");
GameInstance load_model_file(const std::string& path);

// canonical printer; parse(print(parse(t))) is language-equal to parse(t)
std::string print_model(const GameInstance& g);

struct ValidationCheck {
  std::string code; // e.g. "A1-initial", "A2"
  bool ok;
  std::optional<Word> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

// game_profile relaxes A2 to Player-1 configurations (normal-play games have
// meaningful dead ends on the Player-2 side)
ValidationReport validate(const GameInstance& g, bool game_profile = false);

// canned instances: flip, israeli-jalfon, herman-line, lehmann-rabin,
// take-away, nim
GameInstance builtin_model(const std::string& name);
std::vector<std::string> builtin_model_names();
// true for the combinatorial games that require the L2-free profile
bool builtin_needs_game_profile(const std::string& name);
// resolves a --model argument: an existing file path or a builtin name
GameInstance resolve_model(const std::string& arg);

} // namespace regliv
