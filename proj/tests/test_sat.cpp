#include <doctest.h>

#include <random>
#include <sstream>

#include "modelforge/sat.hpp"
#include "oracles.hpp"

using namespace modelforge;
using sat::Cnf;
using sat::SatLimits;
using sat::SatStatus;

namespace {

Cnf make_cnf(std::vector<std::vector<int>> clauses) {
  Cnf cnf;
  for (const auto& c : clauses)
    for (int lit : c) cnf.num_vars = std::max(cnf.num_vars, std::abs(lit));
  cnf.clauses = std::move(clauses);
  return cnf;
}

sat::SatOutcome run(std::vector<std::vector<int>> clauses,
                    long long max_models = 1, bool subsumption = false) {
  sat::Solver solver(make_cnf(std::move(clauses)));
  SatLimits limits;
  limits.max_models = max_models;
  limits.unit_subsumption = subsumption;
  return solver.solve(limits, nullptr);
}

}  // namespace

TEST_CASE("integer stream parsing") {
  std::istringstream in("1 2 0 1 -2 0 -1 2 0 -1 -2 0");
  Cnf cnf = sat::parse_integer_stream(in);
  CHECK(cnf.num_vars == 2);
  REQUIRE(cnf.clauses.size() == 4);
  CHECK(cnf.clauses[0] == std::vector<int>{1, 2});
  CHECK(cnf.clauses[3] == std::vector<int>{-1, -2});

  std::istringstream empty("");
  CHECK(sat::parse_integer_stream(empty).clauses.empty());

  std::istringstream unterminated("1 2");
  CHECK_THROWS_AS(sat::parse_integer_stream(unterminated), InputError);

  std::istringstream junk("1 x 0");
  CHECK_THROWS_AS(sat::parse_integer_stream(junk), InputError);
}

TEST_CASE("the four-clause unsatisfiable example") {
  auto outcome = run({{1, 2}, {1, -2}, {-1, 2}, {-1, -2}});
  CHECK(outcome.status == SatStatus::Unsatisfiable);
  CHECK(outcome.models == 0);
}

TEST_CASE("empty CNF is vacuously satisfiable and exhausted") {
  auto outcome = run({});
  CHECK(outcome.status == SatStatus::ModelsFound);
  CHECK(outcome.models == 1);
  CHECK(outcome.exhausted);
}

TEST_CASE("one binary clause has three models") {
  auto outcome = run({{1, 2}}, 1LL << 40);
  CHECK(outcome.status == SatStatus::ModelsFound);
  CHECK(outcome.models == 3);
  CHECK(outcome.exhausted);
}

TEST_CASE("single unit clause exit semantics") {
  auto one = run({{1}}, 1);
  CHECK(one.models == 1);
  CHECK(one.exhausted);  // one model requested, one model total

  auto many = run({{1}}, 99);
  CHECK(many.models == 1);
  CHECK(many.exhausted);
}

TEST_CASE("models stop at the requested count and mark non-exhaustion") {
  auto outcome = run({{1, 2}}, 2);
  CHECK(outcome.models == 2);
  CHECK_FALSE(outcome.exhausted);
}

TEST_CASE("empty clause refutes immediately") {
  auto outcome = run({{1, 2}, {}});
  CHECK(outcome.status == SatStatus::Unsatisfiable);
}

TEST_CASE("splitting rule picks the first shortest positive clause") {
  // {-1,2} is not all-positive; {3,4} is the shortest positive clause.
  sat::Solver solver(make_cnf({{-1, 2}, {3, 4, 5}, {3, 4}}));
  SatLimits limits;
  solver.solve(limits, nullptr);
  CHECK(solver.stats().first_split_var == 3);
}

TEST_CASE("fallback splits on the first shortest unsatisfied clause") {
  // No all-positive clause exists.
  sat::Solver solver(make_cnf({{-1, -2, -3}, {-4, -5}}));
  SatLimits limits;
  solver.solve(limits, nullptr);
  CHECK(solver.stats().first_split_var == 4);
}

TEST_CASE("unit propagation happens before any split") {
  sat::Solver solver(make_cnf({{3}, {-3, 2}, {-2, 1}}));
  SatLimits limits;
  auto outcome = solver.solve(limits, nullptr);
  CHECK(outcome.models == 1);
  CHECK(solver.stats().splits == 0);
}

TEST_CASE("time limit reports TimeLimit") {
  sat::Solver solver(make_cnf({{1, 2}, {-1, 2}}));
  SatLimits limits;
  limits.max_seconds = 0;
  CHECK(solver.solve(limits, nullptr).status == SatStatus::TimeLimit);
}

TEST_CASE("memory limit trips during construction") {
  MemoryMeter meter(0);
  std::vector<std::vector<int>> clauses(100, std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(sat::Solver(make_cnf(std::move(clauses)), &meter),
                  MemoryLimitReached);
}

TEST_CASE("reported models satisfy every clause") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int vars = 1 + static_cast<int>(rng() % 5);
    int num_clauses = 1 + static_cast<int>(rng() % 6);
    std::vector<std::vector<int>> clauses;
    for (int i = 0; i < num_clauses; ++i) {
      std::vector<int> c;
      int len = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < len; ++j) {
        int v = 1 + static_cast<int>(rng() % vars);
        c.push_back(rng() % 2 ? v : -v);
      }
      clauses.push_back(c);
    }
    sat::Solver solver(make_cnf(clauses));
    SatLimits limits;
    limits.max_models = 1LL << 40;
    long long count = 0;
    auto outcome = solver.solve(limits, [&](const sat::Assignment& a) {
      ++count;
      for (const auto& c : clauses) {
        bool sat = false;
        for (int lit : c) sat = sat || a[std::abs(lit)] == (lit > 0);
        CHECK(sat);
      }
    });
    auto expected = oracles::truth_table(clauses);
    CHECK(outcome.models == expected.models);
    CHECK(count == outcome.models);
    CHECK((outcome.status == SatStatus::Unsatisfiable) == !expected.sat);

    // Unit subsumption must not change anything.
    sat::Solver with_s(make_cnf(clauses));
    SatLimits s_limits = limits;
    s_limits.unit_subsumption = true;
    CHECK(with_s.solve(s_limits, nullptr).models == expected.models);
  }
}
