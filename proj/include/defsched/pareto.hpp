#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "defsched/model_builder.hpp"
#include "defsched/solver.hpp"
#include "defsched/types.hpp"

namespace defsched {

// Payoff table in canonical (max-form) values: row i holds the exact objective
// vector of the solution that maximized objective i (with a tiny tie-break
// reward on the others). Ideal is the diagonal, nadir the column minimum.
struct IdealNadir {
    std::array<std::int64_t, kNumObjectives> ideal{};
    std::array<std::int64_t, kNumObjectives> nadir{};
    std::array<std::array<std::int64_t, kNumObjectives>, kNumObjectives> payoff{};
    std::array<bool, kNumObjectives> row_optimal{};
    int perturb_exponent = 0;  // tie-break term is 10^-E per unit of the others-sum
};

// Grid walker over the bounded objectives. Zero-range objectives never enter;
// `v` counts steps from the nadir (0) towards the ideal (num_steps).
struct EpsilonState {
    std::vector<int> bounded;    // active bounded objective ids, ascending
    std::vector<int> num_steps;  // per active objective; grid has num_steps+1 values
    std::vector<int> v;
    bool done = false;

    std::int64_t grid_size() const;
};

// Odometer step: first coordinate fastest; sets `done` when the walk wraps.
void update_v(EpsilonState& st);

// Scaled bound of cell v for active objective position b:
//   num_steps_b * epsilon = num_steps_b * nadir + v_b * range.
// All comparisons below use this integer form, so the grid is exact.
std::int64_t scaled_epsilon(const EpsilonState& st, const IdealNadir& table, std::size_t b, int v_b);

// An already-accepted solution meets every bound of cell v: re-solving would
// reproduce it, so the cell can be skipped (counted as a duplicate).
bool skip_solutions(const EpsilonState& st, const IdealNadir& table,
                    const std::vector<std::vector<std::int64_t>>& accepted_canonical,
                    const std::vector<int>& v);

// Some recorded infeasible cell is dominated by v componentwise: v's bounds are
// at least as tight, so v is infeasible too.
bool skip_inf_models(const std::vector<std::vector<int>>& infeasible_cells, const std::vector<int>& v);

struct IterationRecord {
    std::vector<int> v;
    std::string status;  // optimal | duplicate | skip_solutions | skip_infeasible |
                         // infeasible | time_limit_feasible | time_limit_unknown
    double seconds = 0.0;
};

struct SolutionRecord {
    Schedule schedule;
    ObjectiveVector raw;
    std::vector<std::int64_t> canonical;
    std::vector<int> v;                         // grid cell that produced it
    std::vector<std::int64_t> epsilon_scaled;   // its bounds, scaled form
    bool dominated_in_full = false;             // flagged by the 7-objective post-filter
};

struct RunLog {
    // Counters: every grid cell lands in exactly one, so they sum to grid_size.
    int n_solutions = 0;        // new optima accepted into the front
    int n_infeasible = 0;       // cells proven infeasible
    int skip_solutions = 0;     // cells skipped for an existing solution, incl. duplicates
    int skip_infeasible = 0;    // cells skipped for a recorded infeasible cell
    int time_with_incumbent = 0;   // timed out with an unproven incumbent
    int time_without_incumbent = 0;  // timed out empty-handed
    std::int64_t grid_size = 0;

    int g = 0;
    bool g_optimal = false;
    IdealNadir table;
    std::vector<int> active_bounded;  // ids that actually spanned the grid
    std::vector<int> active_steps;

    std::vector<SolutionRecord> solutions;
    std::vector<std::vector<int>> infeasible_cells;
    std::vector<IterationRecord> iterations;

    double stage1_seconds = 0.0;
    double payoff_seconds = 0.0;
    double grid_seconds = 0.0;
};

struct RunConfig {
    int primary = 1;                 // objective id optimized on the grid
    std::vector<int> bounded = {3, 4};
    int grid_points = 10;            // values per bounded objective
    double stage1_budget = 1800.0;   // 30 min for the count maximization
    double payoff_budget = 7200.0;   // 2 h across the payoff solves
    double total_budget = 43200.0;   // 12 h for the whole run
    bool deterministic = false;
    SolverParams solver{};
    // Called after every grid cell (including skipped ones).
    std::function<void(const IterationRecord&, std::int64_t index, std::int64_t total)> progress;
};

struct StageOne {
    int g = 0;
    bool optimal = false;
    double seconds = 0.0;
};

// Maximum number of defences that can be scheduled at once. Uses only the
// feasibility core. Throws if the solver cannot even produce an incumbent.
StageOne find_g(Solver& solver, const Instance& inst, const RunConfig& cfg);

// Payoff table on a model that already has its committee count fixed and its
// linearizations added. Splits `budget` equally over the objective solves.
IdealNadir compute_ideal_nadir(Solver& solver, BuiltModel& model, const RunConfig& cfg, double budget,
                               double* seconds_out = nullptr);

// Grid enumeration for a fixed g. `consumed_seconds` counts against the total
// budget (stage one and payoff time when called through run_full).
RunLog run_augmecon(Solver& solver, const Instance& inst, int g, bool g_optimal,
                    const IdealNadir& table, const RunConfig& cfg, double consumed_seconds = 0.0);

// Replays one grid cell in isolation: rebuilds the very model run_augmecon
// uses, pins the bounds to cell `v` (coordinates over the active bounded
// objectives), and solves once. Lets tests audit skipped cells: a cell skipped
// as infeasible must come back Infeasible, one skipped for an existing
// solution must come back with an already-known vector.
SolveResult solve_single_cell(Solver& solver, const Instance& inst, int g, const IdealNadir& table,
                              const RunConfig& cfg, const std::vector<int>& v, double time_limit,
                              Schedule* schedule_out = nullptr,
                              std::vector<std::int64_t>* canonical_out = nullptr);

// find_g + compute_ideal_nadir + run_augmecon with the budget cascade applied.
RunLog run_full(Solver& solver, const Instance& inst, const RunConfig& cfg);

}  // namespace defsched
