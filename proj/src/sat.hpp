// sat.hpp -- a small incremental CDCL SAT solver.
//
// Deterministic by construction: no randomisation, activity ties broken by
// variable index. Clauses may be added between solve() calls; the clause set
// only grows (shape changes in the synthesis layer rebuild the solver).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

namespace regliv::sat {

using Var = int32_t;

struct Lit {
  int32_t x = -2; // 2*var + sign; sign 1 = negated

  Lit() = default;
  Lit(Var v, bool negated) : x(2 * v + (negated ? 1 : 0)) {}

  Var var() const { return x >> 1; }
  bool sign() const { return x & 1; }
  Lit operator~() const {
    Lit l;
    l.x = x ^ 1;
    return l;
  }
  bool operator==(const Lit&) const = default;
  bool operator<(const Lit& o) const { return x < o.x; }
};

inline Lit pos(Var v) { return Lit(v, false); }
inline Lit neg(Var v) { return Lit(v, true); }

enum class Status { sat, unsat, limit };

class Solver {
public:
  Var new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }

  // Returns false if the clause is already falsified at level 0 (the solver
  // becomes permanently unsat).
  bool add_clause(std::vector<Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits);

  Status solve(const std::vector<Lit>& assumptions = {});

  // Model access, valid after Status::sat.
  bool model_value(Var v) const { return model_[v]; }

  // Budget: conflicts before giving up (Status::limit). 0 = unlimited.
  void set_conflict_budget(uint64_t c) { conflict_budget_ = c; }

  uint64_t conflicts() const { return stats_conflicts_; }
  size_t num_problem_clauses() const { return problem_clauses_.size(); }

  // DIMACS dump of the problem clauses (unit facts included).
  void dump_dimacs(std::ostream& out) const;

private:
  using CRef = uint32_t;
  static constexpr CRef kNoReason = std::numeric_limits<CRef>::max();

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // Clause arena: [header | size | lits...]; header bit0 = learnt.
  std::vector<uint32_t> arena_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Lit>> problem_clauses_; // kept for dump_dimacs

  uint32_t clause_size(CRef c) const { return arena_[c + 1]; }
  const Lit* clause_lits(CRef c) const {
    return reinterpret_cast<const Lit*>(&arena_[c + 2]);
  }
  Lit* clause_lits(CRef c) {
    return reinterpret_cast<Lit*>(&arena_[c + 2]);
  }

  std::vector<int8_t> assign_;   // -1 unknown, 0 false, 1 true
  std::vector<int8_t> phase_;    // saved phase
  std::vector<CRef> reason_;
  std::vector<int32_t> level_;
  std::vector<double> activity_;
  std::vector<std::vector<Watcher>> watches_; // indexed by Lit.x
  std::vector<Lit> trail_;
  std::vector<int32_t> trail_lim_;
  std::vector<bool> model_;

  // order heap (binary heap on activity, tie-break smaller var first)
  std::vector<Var> heap_;
  std::vector<int32_t> heap_pos_;

  double var_inc_ = 1.0;
  size_t qhead_ = 0;
  bool ok_ = true;
  uint64_t conflict_budget_ = 0;
  uint64_t stats_conflicts_ = 0;

  // analyze scratch
  std::vector<bool> seen_;
  std::vector<Lit> learnt_scratch_;

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  int8_t value(Lit l) const {
    int8_t a = assign_[l.var()];
    if (a < 0) return -1;
    return l.sign() ? static_cast<int8_t>(1 - a) : a;
  }
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel);
  bool lit_redundant(Lit l, uint32_t abstract_levels);
  void backtrack(int level);
  void bump(Var v);
  void decay() { var_inc_ /= 0.95; }
  void rescale();
  CRef alloc_clause(const std::vector<Lit>& lits, bool learnt);
  void attach(CRef c);
  Var pick_branch();
  void heap_insert(Var v);
  void heap_update(Var v);
  Var heap_pop();
  bool heap_less(Var a, Var b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_sift_up(int i);
  void heap_sift_down(int i);
  void reduce_learnts();
};

} // namespace regliv::sat
