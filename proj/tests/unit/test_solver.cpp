#include <doctest.h>

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "defsched/milp.hpp"
#include "defsched/rng.hpp"
#include "defsched/solver.hpp"

using namespace defsched;

namespace {

// One worker for the whole suite; spawning per test would mask restart bugs.
Solver& shared_solver() {
    static Solver s;
    return s;
}

// Knapsack with near-tied value/weight ratios: incumbents appear immediately
// but the optimality proof needs far longer than the limit.
AbstractMilp stalling_knapsack() {
    Rng rng(3);
    AbstractMilp m;
    m.sense = ObjSense::Maximize;
    std::vector<LinTerm> cap;
    std::int64_t total = 0;
    for (int i = 0; i < 200; ++i) {
        const auto w = rng.uniform_int(100000, 110000);
        total += w;
        const int v = m.add_var("x" + std::to_string(i), VarKind::Binary, 0, 1);
        m.objective.add(v, static_cast<double>(w + 1000));
        cap.push_back({v, static_cast<double>(w)});
    }
    m.add_constraint("cap", std::move(cap), Rel::LE, static_cast<double>(total / 2));
    return m;
}

// Market-split feasibility system: a handful of equality rows over 60
// binaries leaves (almost) no feasible point and no quick incumbent.
AbstractMilp market_split() {
    Rng rng(7);
    AbstractMilp m;
    m.sense = ObjSense::Maximize;
    for (int j = 0; j < 60; ++j) m.add_var("x" + std::to_string(j), VarKind::Binary, 0, 1);
    for (int i = 0; i < 8; ++i) {
        std::vector<LinTerm> terms;
        std::int64_t sum = 0;
        for (int j = 0; j < 60; ++j) {
            const auto a = rng.uniform_int(0, 99);
            sum += a;
            if (a) terms.push_back({j, static_cast<double>(a)});
        }
        m.add_constraint("ms" + std::to_string(i), std::move(terms), Rel::EQ,
                         static_cast<double>(sum / 2));
    }
    return m;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("optimal binary solve returns exact integers") {
    AbstractMilp m;
    m.sense = ObjSense::Maximize;
    const int x = m.add_var("x", VarKind::Binary, 0, 1);
    const int y = m.add_var("y", VarKind::Binary, 0, 1);
    m.objective.add(x, 3.0);
    m.objective.add(y, 2.0);
    m.add_constraint("pick_one", {{x, 1.0}, {y, 1.0}}, Rel::LE, 1);

    const auto r = shared_solver().solve(m, 30.0);
    REQUIRE(r.status == SolveStatus::Optimal);
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == 1.0);  // exactly, post rounding
    CHECK(r.values[1] == 0.0);
    CHECK(r.objective == doctest::Approx(3.0));
    CHECK(violated_constraints(m, r.values).empty());
}

TEST_CASE("objective constants and minimization are honoured") {
    AbstractMilp m;
    m.sense = ObjSense::Minimize;
    const int x = m.add_var("x", VarKind::Integer, 2, 9);
    m.objective.add(x, 2.0);
    m.objective.constant = 10.0;
    const auto r = shared_solver().solve(m, 30.0);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.values[0] == 2.0);
    CHECK(r.objective == doctest::Approx(14.0));
}

TEST_CASE("equality over binaries forces both on") {
    AbstractMilp m;
    const int x = m.add_var("x", VarKind::Binary, 0, 1);
    const int y = m.add_var("y", VarKind::Binary, 0, 1);
    m.add_constraint("both", {{x, 1.0}, {y, 1.0}}, Rel::EQ, 2);
    const auto r = shared_solver().solve(m, 30.0);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.values[0] == 1.0);
    CHECK(r.values[1] == 1.0);
}

TEST_CASE("contradictory bounds come back infeasible") {
    AbstractMilp m;
    const int x = m.add_var("x", VarKind::Binary, 0, 1);
    m.add_constraint("ge", {{x, 1.0}}, Rel::GE, 1);
    m.add_constraint("le", {{x, 1.0}}, Rel::LE, 0);
    const auto r = shared_solver().solve(m, 30.0);
    CHECK(r.status == SolveStatus::Infeasible);
    CHECK(r.values.empty());
}

TEST_CASE("continuous relaxation solves to the LP optimum") {
    AbstractMilp m;
    m.sense = ObjSense::Maximize;
    const int a = m.add_var("a", VarKind::Continuous, 0, 10);
    const int b = m.add_var("b", VarKind::Continuous, 0, 10);
    m.objective.add(a, 1.0);
    m.objective.add(b, 1.0);
    m.add_constraint("budget", {{a, 2.0}, {b, 1.0}}, Rel::LE, 10);
    const auto r = shared_solver().solve(m, 30.0);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(10.0));  // a=0, b=10
}

TEST_CASE("hard knapsack times out holding an incumbent") {
    const auto r = shared_solver().solve(stalling_knapsack(), 2.0);
    REQUIRE(r.status == SolveStatus::FeasibleTimeLimit);
    CHECK(r.values.size() == 200);
    for (double v : r.values) CHECK(v == std::floor(v));
    CHECK(violated_constraints(stalling_knapsack(), r.values).empty());
    CHECK(r.objective > 0.0);
    CHECK(r.seconds < 30.0);  // the limit is enforced, with bounded overshoot
}

TEST_CASE("market split times out with no incumbent at all") {
    const auto r = shared_solver().solve(market_split(), 1.5);
    CHECK(r.status == SolveStatus::Unknown);
    CHECK(r.values.empty());
    CHECK(r.seconds < 30.0);
}

TEST_CASE("worker survives a timeout and solves again") {
    auto& solver = shared_solver();
    (void)solver.solve(market_split(), 1.0);
    AbstractMilp m;
    const int x = m.add_var("x", VarKind::Binary, 0, 1);
    m.objective.add(x, 1.0);
    m.sense = ObjSense::Maximize;
    const auto r = solver.solve(m, 30.0);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.values[0] == 1.0);
}

TEST_CASE("integer results are rounded and re-checked, not trusted") {
    // A chain of equalities whose unique solution is integral; whatever
    // floating point noise the backend returns must be cleaned to exact
    // integers that satisfy every row.
    AbstractMilp m;
    m.sense = ObjSense::Maximize;
    std::vector<int> xs;
    for (int i = 0; i < 12; ++i) xs.push_back(m.add_var("x" + std::to_string(i), VarKind::Integer, 0, 50));
    for (int i = 1; i < 12; ++i)
        m.add_constraint("step" + std::to_string(i),
                         {{xs[static_cast<std::size_t>(i - 1)], 1.0}, {xs[static_cast<std::size_t>(i)], -1.0}},
                         Rel::EQ, -3);
    m.add_constraint("anchor", {{xs[0], 7.0}}, Rel::EQ, 14);
    const auto r = shared_solver().solve(m, 30.0);
    REQUIRE(r.status == SolveStatus::Optimal);
    for (int i = 0; i < 12; ++i) CHECK(r.values[static_cast<std::size_t>(i)] == 2.0 + 3.0 * i);
    CHECK(violated_constraints(m, r.values, 0.0).empty());
}

}  // TEST_SUITE
