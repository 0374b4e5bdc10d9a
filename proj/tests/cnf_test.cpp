#include <doctest.h>

#include <random>
#include <sstream>

#include "patsat/circuits.hpp"
#include "patsat/cnf.hpp"
#include "patsat/oracle.hpp"
#include "test_util.hpp"

using namespace patsat;
using test::cs;

TEST_CASE("parse_dimacs maps 1-based variables to 0-based indices") {
  ClauseSet s = parse_dimacs("p cnf 5 3\n1 5 0\n2 3 0\n3 4 0");
  CHECK(s == test::sample_s());
}

TEST_CASE("parse_dimacs handles negation and comments") {
  ClauseSet s = parse_dimacs("c a comment\np cnf 1 1\n-1 0\n");
  CHECK(s == cs(1, {{-1}}));
}

TEST_CASE("parse_dimacs rejects out-of-range variables") {
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), Error);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n-3 0\n"), Error);
}

TEST_CASE("parse_dimacs rejects malformed headers, warns on count mismatch") {
  CHECK_THROWS_AS(parse_dimacs("p dnf 2 1\n1 0\n"), Error);
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), Error);
  std::vector<std::string> warnings;
  ClauseSet s = parse_dimacs("p cnf 2 5\n1 0\n", &warnings);
  CHECK(s.clauses.size() == 1);
  REQUIRE(warnings.size() == 1);
}

TEST_CASE("serialize_dimacs golden strings") {
  CHECK(serialize_dimacs(test::sample_s()) == "p cnf 5 3\n1 5 0\n2 3 0\n3 4 0\n");
  CHECK(serialize_dimacs(ClauseSet{}) == "p cnf 0 0\n");
  CHECK(serialize_dimacs(cs(6, {{-2, 5}})) == "p cnf 6 1\n-2 6 0\n");
}

TEST_CASE("dimacs round trip on random normalized sets") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    ClauseSet s = test::random_kcnf(3 + seed % 8, 1 + seed % 12, 2 + seed % 2, seed);
    CHECK(parse_dimacs(serialize_dimacs(s)) == s);
  }
}

TEST_CASE("normalize sorts, deduplicates and drops tautologies") {
  CHECK(normalize(cs(5, {{4, 0}, {2, 1}})) == cs(5, {{0, 4}, {1, 2}}));
  CHECK(normalize(cs(2, {{0, -1, 1}})) == cs(2, {}));
  CHECK(normalize(cs(2, {{1}, {1}})) == cs(2, {{1}}));
  CHECK(normalize(cs(2, {{1, 1}})) == cs(2, {{1}}));
}

TEST_CASE("normalize is idempotent and preserves the truth table") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    // messy sets: unsorted, duplicated literals and clauses
    int n = 3 + static_cast<int>(rng() % 8);
    ClauseSet messy;
    messy.num_vars = n;
    for (int c = 0; c < static_cast<int>(1 + rng() % 10); ++c) {
      Clause cl;
      for (int l = 0; l < static_cast<int>(1 + rng() % 4); ++l) {
        cl.lits.push_back({static_cast<int>(rng() % n), (rng() & 1) != 0});
      }
      messy.clauses.push_back(cl);
      if (rng() % 3 == 0) messy.clauses.push_back(cl);
    }
    ClauseSet once = normalize(messy);
    CHECK(normalize(once) == once);
    CHECK(pattern_domain(once) == pattern_domain(messy));
  }
}

TEST_CASE("assign reproduces the worked residual") {
  Residual r = assign(test::sample_s(), 0, true);
  REQUIRE(r.is_set());
  CHECK(r.set == cs(5, {{1, 2}, {2, 3}}));
  CHECK(r.set.num_vars == 5);
}

TEST_CASE("assign collapses to terminals") {
  CHECK(assign(cs(1, {{0}}), 0, false).is_false());
  CHECK(assign(cs(2, {{0, 1}}), 0, true).is_true());
  CHECK_THROWS_AS(assign(cs(2, {{0}}), 5, true), Error);
}

TEST_CASE("assign deduplicates residual clauses") {
  // {0,1} collapses onto the existing unit {1} once 0 is false
  Residual r = assign(cs(3, {{0, 1}, {1}, {1, 2}}), 0, false);
  REQUIRE(r.is_set());
  CHECK(r.set == cs(3, {{1}, {1, 2}}));
}

TEST_CASE("eval ground truth") {
  Assignment all_true(5), all_false(5);
  for (int v = 0; v < 5; ++v) {
    all_true.set(v, true);
    all_false.set(v, false);
  }
  CHECK(eval(test::sample_s(), all_true));
  CHECK_FALSE(eval(test::sample_s(), all_false));
  Assignment partial(5);
  partial.set(1, true);
  partial.set(2, false);
  partial.set(3, true);
  CHECK(eval(test::sample_s_suffix(), partial));
  Assignment missing(5);
  CHECK_THROWS_AS(eval(test::sample_s_suffix(), missing), Error);
}

TEST_CASE("assign commutes with eval (exhaustive over small sets)") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    int n = 2 + static_cast<int>(seed % 7);
    ClauseSet s = test::random_kcnf(n, 2 + seed % 6, 2, 100 + seed);
    for (int var = 0; var < n; ++var) {
      for (bool value : {false, true}) {
        Residual r = assign(s, var, value);
        for (uint64_t row = 0; row < (uint64_t{1} << n); ++row) {
          Assignment a = row_assignment(row, n);
          if (a.get(var) != value) continue;
          bool direct = eval(s, a);
          bool via = r.is_true() || (r.is_set() && eval(r.set, a));
          CHECK(direct == via);
        }
      }
    }
  }
}

TEST_CASE("canonical text encoding") {
  CHECK(to_key(normalize(test::sample_3cnf())) == "0,1,!2;1,3,4;!1,5;2,3");
  CHECK(to_key(ClauseSet{}) == "");
  ClauseSet s = from_key("!0,1;2,3;0,!2,4;0,3,5", 6);
  CHECK(to_key(s) == "!0,1;2,3;0,!2,4;0,3,5");
  CHECK(s.num_vars == 6);
}
