// regexp.hpp -- regular expressions over a declared alphabet.
//
// Syntax: alternation `|`, repetition `* + ?`, grouping `( )`, juxtaposition
// for concatenation. An atom is either a declared letter or a pair letter
// `a/b` (only meaningful over a pair alphabet). Runs of name characters are
// segmented greedily into declared letters, so `00*` works for single-letter
// names and multi-character names stay usable.

#pragma once

#include <string>

#include "automata.hpp"

namespace regliv {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_)),
        line(line_), column(col_) {}
};

// base: the declared letters. allow_pairs: accept `a/b` atoms and build the
// result over pairs(base); plain letters are then rejected.
Nfa parse_regex(const std::string& text, const AlphabetRef& base, bool allow_pairs,
                int line_offset = 1);

// language-faithful regex for a DFA (state elimination); used by the model
// printer. Produces the empty-set marker `~` for the empty language.
std::string dfa_to_regex(const Dfa& d);

} // namespace regliv
