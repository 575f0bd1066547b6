#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sat.hpp"

using namespace regliv::sat;

namespace {

// brute-force satisfiability over <= 20 vars
bool brute_sat(int nvars, const std::vector<std::vector<Lit>>& clauses) {
  for (uint32_t m = 0; m < (1u << nvars); ++m) {
    bool all = true;
    for (const auto& c : clauses) {
      bool any = false;
      for (Lit l : c) {
        bool v = (m >> l.var()) & 1;
        if (l.sign() ? !v : v) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

} // namespace

TEST_CASE("trivial units and conflicts") {
  Solver s;
  Var a = s.new_var(), b = s.new_var();
  CHECK(s.add_clause({pos(a)}));
  CHECK(s.add_clause({neg(a), pos(b)}));
  CHECK(s.solve() == Status::sat);
  CHECK(s.model_value(a));
  CHECK(s.model_value(b));
  s.add_clause({neg(b)});
  CHECK(s.solve() == Status::unsat);
}

TEST_CASE("pigeonhole 4 into 3 is unsat") {
  Solver s;
  const int P = 4, H = 3;
  std::vector<std::vector<Var>> x(P, std::vector<Var>(H));
  for (int p = 0; p < P; ++p)
    for (int h = 0; h < H; ++h) x[p][h] = s.new_var();
  for (int p = 0; p < P; ++p) {
    std::vector<Lit> c;
    for (int h = 0; h < H; ++h) c.push_back(pos(x[p][h]));
    s.add_clause(c);
  }
  for (int h = 0; h < H; ++h)
    for (int p1 = 0; p1 < P; ++p1)
      for (int p2 = p1 + 1; p2 < P; ++p2)
        s.add_clause({neg(x[p1][h]), neg(x[p2][h])});
  CHECK(s.solve() == Status::unsat);
}

TEST_CASE("random 3-SAT agrees with brute force") {
  std::mt19937 rng(12345);
  for (int round = 0; round < 300; ++round) {
    int nvars = 3 + static_cast<int>(rng() % 10);
    int nclauses = 2 + static_cast<int>(rng() % (4 * nvars));
    Solver s;
    for (int i = 0; i < nvars; ++i) s.new_var();
    std::vector<std::vector<Lit>> clauses;
    bool ok = true;
    for (int i = 0; i < nclauses; ++i) {
      int len = 1 + static_cast<int>(rng() % 3);
      std::vector<Lit> c;
      for (int j = 0; j < len; ++j)
        c.push_back(Lit(static_cast<Var>(rng() % nvars), rng() % 2 == 0));
      clauses.push_back(c);
      if (!s.add_clause(c)) ok = false;
    }
    bool expect = brute_sat(nvars, clauses);
    if (!ok) {
      CHECK_FALSE(expect);
      continue;
    }
    Status st = s.solve();
    REQUIRE(st != Status::limit);
    CHECK((st == Status::sat) == expect);
    if (st == Status::sat) {
      // model must satisfy every clause
      for (const auto& c : clauses) {
        bool any = false;
        for (Lit l : c)
          if (s.model_value(l.var()) != l.sign()) any = true;
        CHECK(any);
      }
    }
  }
}

TEST_CASE("incremental clause addition narrows models") {
  Solver s;
  std::vector<Var> v;
  for (int i = 0; i < 8; ++i) v.push_back(s.new_var());
  std::vector<Lit> all;
  for (Var x : v) all.push_back(pos(x));
  s.add_clause(all);
  for (int round = 0; round < 8; ++round) {
    Status st = s.solve();
    if (st == Status::unsat) {
      CHECK(round == 7);
      // exactly one variable left possible each round; after banning all true
      // assignments of a single-positive clause the instance is unsat only
      // once every variable has been forced false
      break;
    }
    REQUIRE(st == Status::sat);
    // ban the variable that is currently true
    int t = -1;
    for (int i = 0; i < 8; ++i)
      if (s.model_value(v[i])) t = i;
    REQUIRE(t >= 0);
    s.add_clause({neg(v[t])});
  }
}

TEST_CASE("assumptions") {
  Solver s;
  Var a = s.new_var(), b = s.new_var();
  s.add_clause({pos(a), pos(b)});
  CHECK(s.solve({neg(a)}) == Status::sat);
  CHECK(s.model_value(b));
  CHECK(s.solve({neg(a), neg(b)}) == Status::unsat);
  CHECK(s.solve() == Status::sat);
}
