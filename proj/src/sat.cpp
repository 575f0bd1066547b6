#include "sat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

namespace regliv::sat {

Var Solver::new_var() {
  Var v = static_cast<Var>(assign_.size());
  assign_.push_back(-1);
  phase_.push_back(0);
  reason_.push_back(kNoReason);
  level_.push_back(0);
  activity_.push_back(0.0);
  seen_.push_back(false);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_pos_.push_back(-1);
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::initializer_list<Lit> lits) {
  return add_clause(std::vector<Lit>(lits));
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  problem_clauses_.push_back(lits);
  if (decision_level() != 0) backtrack(0);

  std::sort(lits.begin(), lits.end());
  // strip duplicates, drop clauses with complementary literals,
  // drop literals already false at level 0
  std::vector<Lit> out;
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i > 0 && lits[i] == lits[i - 1]) continue;
    if (i + 1 < lits.size() && lits[i + 1] == ~lits[i]) return true; // tautology
    if (i > 0 && lits[i] == ~lits[i - 1]) return true;
    int8_t v = value(lits[i]);
    if (v == 1) return true; // already satisfied
    if (v == 0) continue;    // false at level 0
    out.push_back(lits[i]);
  }
  if (out.empty()) {
    ok_ = false;
    return false;
  }
  if (out.size() == 1) {
    enqueue(out[0], kNoReason);
    if (propagate() != kNoReason) {
      ok_ = false;
      return false;
    }
    return true;
  }
  CRef c = alloc_clause(out, false);
  attach(c);
  return true;
}

Solver::CRef Solver::alloc_clause(const std::vector<Lit>& lits, bool learnt) {
  CRef c = static_cast<CRef>(arena_.size());
  arena_.push_back(learnt ? 1u : 0u);
  arena_.push_back(static_cast<uint32_t>(lits.size()));
  for (Lit l : lits) arena_.push_back(static_cast<uint32_t>(l.x));
  if (learnt) learnts_.push_back(c);
  return c;
}

void Solver::attach(CRef c) {
  const Lit* ls = clause_lits(c);
  watches_[(~ls[0]).x].push_back({c, ls[1]});
  watches_[(~ls[1]).x].push_back({c, ls[0]});
}

void Solver::enqueue(Lit l, CRef reason) {
  assert(value(l) == -1);
  assign_[l.var()] = l.sign() ? 0 : 1;
  phase_[l.var()] = assign_[l.var()];
  reason_[l.var()] = reason;
  level_[l.var()] = decision_level();
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    auto& ws = watches_[p.x];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      CRef c = w.cref;
      Lit* ls = clause_lits(c);
      uint32_t sz = clause_size(c);
      Lit false_lit = ~p;
      if (ls[0] == false_lit) std::swap(ls[0], ls[1]);
      Lit first = ls[0];
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = {c, first};
        ++i;
        continue;
      }
      bool moved = false;
      for (uint32_t k = 2; k < sz; ++k) {
        if (value(ls[k]) != 0) {
          std::swap(ls[1], ls[k]);
          watches_[(~ls[1]).x].push_back({c, first});
          moved = true;
          break;
        }
      }
      if (moved) {
        ++i;
        continue;
      }
      // unit or conflict
      ws[j++] = {c, first};
      ++i;
      if (value(first) == 0) {
        // conflict: copy the rest of the watchers back
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return c;
      }
      enqueue(first, c);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::bump(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) rescale();
  if (heap_pos_[v] >= 0) heap_sift_up(heap_pos_[v]);
}

void Solver::rescale() {
  for (double& a : activity_) a *= 1e-100;
  var_inc_ *= 1e-100;
}

void Solver::analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel) {
  out_learnt.clear();
  out_learnt.push_back(Lit()); // slot for the asserting literal
  int path = 0;
  Lit p;
  bool have_p = false;
  size_t index = trail_.size();

  do {
    assert(confl != kNoReason);
    const Lit* ls = clause_lits(confl);
    uint32_t sz = clause_size(confl);
    // in a reason clause the implied literal sits at slot 0
    for (uint32_t k = (have_p ? 1 : 0); k < sz; ++k) {
      Lit q = ls[k];
      Var v = q.var();
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = true;
        bump(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          out_learnt.push_back(q);
      }
    }
    // pick next literal on trail to expand
    while (!seen_[trail_[index - 1].var()]) --index;
    p = trail_[--index];
    have_p = true;
    confl = reason_[p.var()];
    seen_[p.var()] = false;
    --path;
  } while (path > 0);
  out_learnt[0] = ~p;

  // clause minimisation: drop literals implied by the rest
  uint32_t abstract = 0;
  for (size_t k = 1; k < out_learnt.size(); ++k)
    abstract |= 1u << (level_[out_learnt[k].var()] & 31);
  size_t j = 1;
  for (size_t k = 1; k < out_learnt.size(); ++k) {
    Var v = out_learnt[k].var();
    if (reason_[v] == kNoReason || !lit_redundant(out_learnt[k], abstract))
      out_learnt[j++] = out_learnt[k];
  }
  out_learnt.resize(j);

  out_btlevel = 0;
  if (out_learnt.size() > 1) {
    size_t max_i = 1;
    for (size_t k = 2; k < out_learnt.size(); ++k)
      if (level_[out_learnt[k].var()] > level_[out_learnt[max_i].var()]) max_i = k;
    std::swap(out_learnt[1], out_learnt[max_i]);
    out_btlevel = level_[out_learnt[1].var()];
  }
  for (Lit l : out_learnt) seen_[l.var()] = false;
}

bool Solver::lit_redundant(Lit l, uint32_t abstract_levels) {
  // bounded recursive check whether ~l is implied by seen literals
  std::vector<Lit> stack{l};
  std::vector<Var> cleared;
  while (!stack.empty()) {
    Lit q = stack.back();
    stack.pop_back();
    CRef r = reason_[q.var()];
    if (r == kNoReason) {
      for (Var v : cleared) seen_[v] = false;
      return false;
    }
    const Lit* ls = clause_lits(r);
    uint32_t sz = clause_size(r);
    for (uint32_t k = 0; k < sz; ++k) {
      Lit x = ls[k];
      if (x.var() == q.var()) continue;
      Var v = x.var();
      if (seen_[v] || level_[v] == 0) continue;
      if (reason_[v] == kNoReason || !((1u << (level_[v] & 31)) & abstract_levels)) {
        for (Var vv : cleared) seen_[vv] = false;
        return false;
      }
      seen_[v] = true;
      cleared.push_back(v);
      stack.push_back(x);
    }
  }
  return true;
}

void Solver::backtrack(int lvl) {
  if (decision_level() <= lvl) return;
  size_t limit = trail_lim_[lvl];
  for (size_t i = trail_.size(); i-- > limit;) {
    Var v = trail_[i].var();
    assign_[v] = -1;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(limit);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

void Solver::heap_insert(Var v) {
  heap_pos_[v] = static_cast<int32_t>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_pos_[v]);
}

void Solver::heap_sift_up(int i) {
  Var v = heap_[i];
  while (i > 0) {
    int parent = (i - 1) >> 1;
    if (heap_less(v, heap_[parent])) {
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    } else
      break;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

void Solver::heap_sift_down(int i) {
  Var v = heap_[i];
  int n = static_cast<int>(heap_.size());
  while (2 * i + 1 < n) {
    int child = 2 * i + 1;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (heap_less(heap_[child], v)) {
      heap_[i] = heap_[child];
      heap_pos_[heap_[i]] = i;
      i = child;
    } else
      break;
  }
  heap_[i] = v;
  heap_pos_[v] = i;
}

Var Solver::heap_pop() {
  Var v = heap_[0];
  heap_pos_[v] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_sift_down(0);
  }
  return v;
}

Var Solver::pick_branch() {
  while (!heap_.empty()) {
    Var v = heap_pop();
    if (assign_[v] < 0) return v;
  }
  return -1;
}

void Solver::reduce_learnts() {
  // drop the older half of the learnt clauses (detach lazily is unsound with
  // this watch scheme, so we keep it simple: only forget clauses that are not
  // a reason for anything)
  if (learnts_.size() < 4000) return;
  // Rebuild watches without the dropped clauses.
  std::vector<CRef> keep;
  size_t half = learnts_.size() / 2;
  std::vector<bool> drop_set(learnts_.size(), false);
  size_t dropped = 0;
  for (size_t i = 0; i + 1 < learnts_.size() && dropped < half; ++i) {
    CRef c = learnts_[i];
    bool is_reason = false;
    const Lit* ls = clause_lits(c);
    Var v0 = ls[0].var();
    if (assign_[v0] >= 0 && reason_[v0] == c) is_reason = true;
    if (!is_reason && clause_size(c) > 2) {
      drop_set[i] = true;
      ++dropped;
    }
  }
  if (dropped == 0) return;
  std::vector<CRef> new_learnts;
  for (size_t i = 0; i < learnts_.size(); ++i)
    if (!drop_set[i]) new_learnts.push_back(learnts_[i]);

  for (auto& ws : watches_) ws.clear();
  for (size_t c = 0; c < arena_.size();) {
    uint32_t learnt = arena_[c];
    uint32_t sz = arena_[c + 1];
    if (!learnt)
      attach(static_cast<CRef>(c));
    c += 2 + sz;
  }
  for (CRef c : new_learnts) attach(c);
  learnts_ = std::move(new_learnts);
}

static uint64_t luby(uint64_t x) {
  // Luby sequence: 1 1 2 1 1 2 4 ...
  uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) / 2;
    --seq;
    x = x % size;
  }
  return 1ull << seq;
}

Status Solver::solve(const std::vector<Lit>& assumptions) {
  if (!ok_) return Status::unsat;
  backtrack(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return Status::unsat;
  }

  uint64_t restart_round = 0;
  uint64_t conflicts_until_restart = 64 * luby(restart_round);
  uint64_t conflict_count_this = 0;
  uint64_t total_start = stats_conflicts_;
  std::vector<Lit> learnt;

  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_conflicts_;
      ++conflict_count_this;
      if (decision_level() == 0) {
        ok_ = false;
        return Status::unsat;
      }
      int btlevel;
      analyze(confl, learnt, btlevel);
      backtrack(btlevel); // assumptions below btlevel get re-pushed by the main loop
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        CRef c = alloc_clause(learnt, true);
        attach(c);
        enqueue(learnt[0], c);
      }
      decay();
      if (conflict_budget_ && stats_conflicts_ - total_start >= conflict_budget_)
        return Status::limit;
      if (conflict_count_this >= conflicts_until_restart) {
        conflict_count_this = 0;
        conflicts_until_restart = 64 * luby(++restart_round);
        backtrack(0);
      }
    } else {
      if (decision_level() == 0) reduce_learnts();
      // push pending assumptions as decisions
      Lit next;
      bool have_next = false;
      if (decision_level() < static_cast<int>(assumptions.size())) {
        Lit a = assumptions[decision_level()];
        int8_t v = value(a);
        if (v == 0) return Status::unsat; // assumption falsified
        trail_lim_.push_back(static_cast<int32_t>(trail_.size()));
        if (v == -1) {
          next = a;
          have_next = true;
        }
        if (!have_next) continue; // assumption already true: empty level
      } else {
        Var v = pick_branch();
        if (v < 0) {
          model_.assign(assign_.begin(), assign_.end());
          backtrack(0);
          return Status::sat;
        }
        trail_lim_.push_back(static_cast<int32_t>(trail_.size()));
        next = Lit(v, phase_[v] == 0);
        have_next = true;
      }
      enqueue(next, kNoReason);
    }
  }
}

void Solver::dump_dimacs(std::ostream& out) const {
  out << "p cnf " << num_vars() << ' ' << problem_clauses_.size() << '\n';
  for (const auto& cl : problem_clauses_) {
    for (Lit l : cl) out << (l.sign() ? -(l.var() + 1) : (l.var() + 1)) << ' ';
    out << "0\n";
  }
}

} // namespace regliv::sat
