#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "defsched/generator.hpp"
#include "defsched/objectives.hpp"
#include "defsched/oracle.hpp"
#include "defsched/pareto.hpp"
#include "defsched/solver.hpp"
#include "defsched/validate.hpp"
#include "test_support.hpp"

using namespace defsched;

namespace {

Solver& shared_solver() {
    static Solver solver;
    return solver;
}

bool contains(const std::vector<std::vector<std::int64_t>>& set,
              const std::vector<std::int64_t>& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

std::vector<std::int64_t> project(const std::vector<std::int64_t>& z, const std::vector<int>& dims) {
    std::vector<std::int64_t> out;
    for (int d : dims) out.push_back(z[static_cast<std::size_t>(d)]);
    return out;
}

// 0-based canonical indices the grid actually constrains: the primary
// objective plus every bounded objective that survived the range check.
std::vector<int> grid_dims(const RunConfig& cfg, const RunLog& log) {
    std::vector<int> dims = {cfg.primary - 1};
    for (int id : log.active_bounded) dims.push_back(id - 1);
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    return dims;
}

IdealNadir two_axis_table() {
    IdealNadir table;
    table.nadir[2] = 10;
    table.ideal[2] = 20;
    table.nadir[3] = 0;
    table.ideal[3] = 4;
    return table;
}

EpsilonState two_axis_state() {
    EpsilonState st;
    st.bounded = {3, 4};
    st.num_steps = {2, 2};
    st.v = {0, 0};
    return st;
}

}  // namespace

TEST_SUITE("pareto") {

TEST_CASE("grid walker visits every cell, first coordinate fastest") {
    EpsilonState st;
    st.bounded = {3, 4};
    st.num_steps = {2, 3};
    st.v = {0, 0};
    CHECK(st.grid_size() == 12);

    std::vector<std::vector<int>> visited;
    while (!st.done) {
        visited.push_back(st.v);
        update_v(st);
    }
    const std::vector<std::vector<int>> expect = {
        {0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1},
        {0, 2}, {1, 2}, {2, 2}, {0, 3}, {1, 3}, {2, 3},
    };
    CHECK(visited == expect);

    SUBCASE("an empty grid is a single cell") {
        EpsilonState empty;
        CHECK(empty.grid_size() == 1);
        update_v(empty);
        CHECK(empty.done);
    }
}

TEST_CASE("scaled bounds interpolate nadir to ideal without rounding") {
    EpsilonState st;
    st.bounded = {3};
    st.num_steps = {2};
    IdealNadir table;
    table.nadir[2] = 10;
    table.ideal[2] = 20;
    // num_steps * epsilon at v = 0, 1, 2: 2*10, 2*10 + 10, 2*10 + 20.
    CHECK(scaled_epsilon(st, table, 0, 0) == 20);
    CHECK(scaled_epsilon(st, table, 0, 1) == 30);
    CHECK(scaled_epsilon(st, table, 0, 2) == 40);

    table.nadir[2] = -5;
    table.ideal[2] = 5;
    CHECK(scaled_epsilon(st, table, 0, 0) == -10);
    CHECK(scaled_epsilon(st, table, 0, 1) == 0);
    CHECK(scaled_epsilon(st, table, 0, 2) == 10);
}

TEST_CASE("a cell is skipped only when one solution covers all its bounds") {
    const auto st = two_axis_state();
    const auto table = two_axis_table();
    // Canonical vector sitting at z3 = 15 (midpoint) and z4 = 4 (ideal).
    std::vector<std::vector<std::int64_t>> accepted = {{0, 0, 15, 4, 0, 0, 0}};
    CHECK(skip_solutions(st, table, accepted, {0, 0}));
    CHECK(skip_solutions(st, table, accepted, {1, 2}));
    CHECK(!skip_solutions(st, table, accepted, {2, 0}));  // needs z3 = 20

    // Two solutions that each cover one axis never justify a joint skip.
    accepted = {{0, 0, 20, 0, 0, 0, 0}, {0, 0, 10, 4, 0, 0, 0}};
    CHECK(!skip_solutions(st, table, accepted, {2, 2}));
    CHECK(skip_solutions(st, table, accepted, {2, 0}));
    CHECK(skip_solutions(st, table, accepted, {0, 2}));
    CHECK(!skip_solutions(st, table, {}, {0, 0}));
}

TEST_CASE("a cell inherits infeasibility from any looser infeasible cell") {
    const std::vector<std::vector<int>> cells = {{1, 2}};
    CHECK(skip_inf_models(cells, {1, 2}));
    CHECK(skip_inf_models(cells, {2, 2}));
    CHECK(skip_inf_models(cells, {1, 3}));
    CHECK(!skip_inf_models(cells, {0, 2}));
    CHECK(!skip_inf_models(cells, {1, 1}));
    CHECK(!skip_inf_models({}, {0, 0}));
}

TEST_CASE("a small run agrees with exhaustive enumeration end to end") {
    const auto inst = generate_instance(testsup::tiny_config(0), testsup::tiny_seed(0));
    RunConfig cfg;
    cfg.primary = 1;
    cfg.bounded = {3, 4};
    cfg.grid_points = 3;
    cfg.stage1_budget = 60.0;
    cfg.payoff_budget = 120.0;
    cfg.total_budget = 600.0;
    cfg.deterministic = true;

    const RunLog log = run_full(shared_solver(), inst, cfg);

    CHECK(log.g == brute_force_g(inst));
    CHECK(log.g_optimal);
    CHECK(log.table.perturb_exponent >= 1);
    for (bool row : log.table.row_optimal) CHECK(row);

    // Every cell lands in exactly one counter.
    CHECK(log.n_solutions + log.n_infeasible + log.skip_solutions + log.skip_infeasible +
              log.time_with_incumbent + log.time_without_incumbent ==
          log.grid_size);
    std::int64_t cells = 1;
    for (int steps : log.active_steps) cells *= steps + 1;
    CHECK(log.grid_size == cells);
    CHECK(static_cast<std::int64_t>(log.iterations.size()) == log.grid_size);
    CHECK(log.time_with_incumbent == 0);
    CHECK(log.time_without_incumbent == 0);

    // The all-nadir cell is the least constrained, so it must produce the
    // first accepted solution.
    REQUIRE(!log.iterations.empty());
    CHECK(log.iterations[0].status == "optimal");
    REQUIRE(log.n_solutions >= 1);

    const auto vectors = brute_force_vectors(inst, log.g);
    const auto front = brute_force_pareto(inst, log.g);

    // Payoff diagonal = true per-objective maxima; column minima stay between
    // the front's worst value and the ideal.
    for (int i = 0; i < kNumObjectives; ++i) {
        std::int64_t best = vectors[0][static_cast<std::size_t>(i)];
        std::int64_t front_min = front[0][static_cast<std::size_t>(i)];
        for (const auto& z : vectors) best = std::max(best, z[static_cast<std::size_t>(i)]);
        for (const auto& z : front) front_min = std::min(front_min, z[static_cast<std::size_t>(i)]);
        CHECK(log.table.ideal[static_cast<std::size_t>(i)] == best);
        CHECK(log.table.nadir[static_cast<std::size_t>(i)] >= front_min);
        CHECK(log.table.nadir[static_cast<std::size_t>(i)] <=
              log.table.ideal[static_cast<std::size_t>(i)]);
    }

    const auto dims = grid_dims(cfg, log);
    EpsilonState st;
    st.bounded = log.active_bounded;
    st.num_steps = log.active_steps;
    for (const auto& sol : log.solutions) {
        CHECK(verify_solution(inst, sol.schedule, sol.raw).ok);
        CHECK(sol.canonical == canonicalize(sol.raw));
        CHECK(contains(vectors, sol.canonical));
        // Honours the bounds of the cell that produced it, in scaled form.
        REQUIRE(sol.epsilon_scaled.size() == log.active_bounded.size());
        for (std::size_t b = 0; b < log.active_bounded.size(); ++b) {
            const auto id = static_cast<std::size_t>(log.active_bounded[b] - 1);
            CHECK(st.num_steps[b] * sol.canonical[id] >= sol.epsilon_scaled[b]);
        }
        // No exhaustively enumerated point beats it on the grid dimensions.
        const auto mine = project(sol.canonical, dims);
        for (const auto& z : front) CHECK(!dominates(project(z, dims), mine));
    }
}

TEST_CASE("bounded objectives with no spread drop out of the grid") {
    // One room and one day: a room change is impossible, so the room-change
    // objective has zero range and only the active-days axis remains.
    const auto inst = generate_instance(testsup::tiny_config(2), testsup::tiny_seed(2));
    RunConfig cfg;
    cfg.primary = 1;
    cfg.bounded = {6, 7};
    cfg.grid_points = 3;
    cfg.stage1_budget = 60.0;
    cfg.payoff_budget = 120.0;
    cfg.total_budget = 600.0;
    cfg.deterministic = true;

    const RunLog log = run_full(shared_solver(), inst, cfg);
    CHECK(log.table.ideal[6] == log.table.nadir[6]);
    CHECK(std::find(log.active_bounded.begin(), log.active_bounded.end(), 7) ==
          log.active_bounded.end());
    CHECK(log.active_bounded == std::vector<int>{6});
    CHECK(log.grid_size == 3);  // grid_points values on the one surviving axis
    CHECK(log.n_solutions + log.n_infeasible + log.skip_solutions + log.skip_infeasible +
              log.time_with_incumbent + log.time_without_incumbent ==
          log.grid_size);
}

TEST_CASE("an instance that schedules nothing still completes cleanly") {
    auto inst = testsup::hand_instance();
    for (auto& day : inst.room_availability)
        for (auto& slot : day) slot.assign(slot.size(), 0);

    RunConfig cfg;
    cfg.deterministic = true;
    cfg.stage1_budget = 60.0;
    cfg.payoff_budget = 120.0;
    cfg.total_budget = 600.0;
    const RunLog log = run_full(shared_solver(), inst, cfg);

    CHECK(log.g == 0);
    CHECK(log.active_bounded.empty());  // every objective is pinned at zero
    CHECK(log.grid_size == 1);
    CHECK(log.n_solutions == 1);
    REQUIRE(log.solutions.size() == 1);
    CHECK(log.solutions[0].schedule.assignments.empty());
    CHECK(log.solutions[0].schedule.num_scheduled == 0);
    CHECK(log.solutions[0].canonical == std::vector<std::int64_t>(7, 0));
    REQUIRE(log.iterations.size() == 1);
    CHECK(log.iterations[0].status == "optimal");
}

TEST_CASE("replaying a recorded cell reproduces its outcome") {
    const auto inst = generate_instance(testsup::tiny_config(1), testsup::tiny_seed(1));
    RunConfig cfg;
    cfg.primary = 1;
    cfg.bounded = {3, 4};
    cfg.grid_points = 2;
    cfg.stage1_budget = 60.0;
    cfg.payoff_budget = 120.0;
    cfg.total_budget = 600.0;
    cfg.deterministic = true;

    const RunLog log = run_full(shared_solver(), inst, cfg);
    REQUIRE(log.n_solutions >= 1);

    std::vector<std::vector<std::int64_t>> accepted;
    for (const auto& sol : log.solutions) accepted.push_back(sol.canonical);

    int replayed_optimal = 0;
    int replayed_skips = 0;
    for (const auto& iter : log.iterations) {
        if (iter.status == "optimal" && replayed_optimal < 2) {
            // The exact cell that produced a solution must reproduce it.
            std::vector<std::int64_t> canonical;
            const auto res = solve_single_cell(shared_solver(), inst, log.g, log.table, cfg,
                                               iter.v, 60.0, nullptr, &canonical);
            REQUIRE(res.status == SolveStatus::Optimal);
            const SolutionRecord* match = nullptr;
            for (const auto& sol : log.solutions)
                if (sol.v == iter.v) match = &sol;
            REQUIRE(match != nullptr);
            CHECK(canonical == match->canonical);
            ++replayed_optimal;
        } else if (iter.status == "skip_solutions" && replayed_skips < 2) {
            // A skipped cell, forced through the solver, lands on a vector
            // the run already accepted.
            std::vector<std::int64_t> canonical;
            const auto res = solve_single_cell(shared_solver(), inst, log.g, log.table, cfg,
                                               iter.v, 60.0, nullptr, &canonical);
            REQUIRE(res.status == SolveStatus::Optimal);
            CHECK(contains(accepted, canonical));
            ++replayed_skips;
        } else if (iter.status == "skip_infeasible") {
            const auto res = solve_single_cell(shared_solver(), inst, log.g, log.table, cfg,
                                               iter.v, 60.0);
            CHECK(res.status == SolveStatus::Infeasible);
        }
    }
    CHECK(replayed_optimal >= 1);
}

}  // TEST_SUITE
