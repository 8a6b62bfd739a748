#pragma once

#include <cstdint>
#include <vector>

#include "defsched/milp.hpp"
#include "defsched/types.hpp"

namespace defsched {

// Column lookup tables for the scheduling MILP. Every map returns -1 where the
// variable was not materialized (impossible placements are never created when
// sparsification is on). All lookups take 1-based indices.
struct VarIndex {
    // assignment vars x(i,j,t,k,l,p) and event vars y(j,k,l,p)
    std::vector<int> x, y;
    // member-activity vars ybar(i,k,l,p): 1 iff member i starts an assignment at (k,l,p)
    std::vector<int> ybar;
    // one-hot selectors: workload w(i, n), per-day count yhat(i, n, k), active days wbar(i, n)
    std::vector<int> w, yhat, wbar;
    // coverage one-hot s_cov(c, j, q), compactness sbar(i,k,l), room-change shat(i,k,l,p)
    std::vector<int> s_cov, sbar, shat;

    int n_i = 0, n_j = 0, n_t = 0, n_k = 0, n_l = 0, n_p = 0, n_q = 0;
    int w_max = 0, yhat_max = 0, wbar_max = 0, cov_max = 0;

    int x_at(int i, int j, int t, int k, int l, int p) const;
    int y_at(int j, int k, int l, int p) const;
    int ybar_at(int i, int k, int l, int p) const;
    int w_at(int i, int count) const;        // count in [0, w_max]
    int yhat_at(int i, int count, int k) const;
    int wbar_at(int i, int count) const;
    int cov_at(int count, int j, int q) const;
    int sbar_at(int i, int k, int l) const;
    int shat_at(int i, int k, int l, int p) const;
};

struct BuildOptions {
    // With sparsification, variables for placements that violate eligibility or
    // an availability window are never created. Without it they exist with an
    // upper bound of zero — same feasible set, used to cross-check the pruning.
    bool sparsify = true;
};

struct BuiltModel {
    AbstractMilp milp;
    VarIndex idx;
    const Instance* instance = nullptr;
    int g_row = -1;              // row of the committee-count equality, -1 until set_g
    bool linearized = false;     // objective auxiliaries present
    int base_var_count = 0;      // columns of the feasibility core alone
    int linearized_var_count = 0;  // columns after the auxiliaries; anything beyond
                                   // is epsilon machinery and blocks encode_schedule
};

// Feasibility core: assignment/event variables and the committee, clash and
// count constraints. The committee-count equality is added by set_g.
BuiltModel build_base_model(const Instance& inst, const BuildOptions& opts = {});

// Fix the number of scheduled defences. Re-invocation replaces the equality.
void set_g(BuiltModel& model, int g);

// Add the auxiliary variables and channeling constraints that make all seven
// objective expressions linear. Idempotent.
void add_objective_linearizations(BuiltModel& model);

// Linear expression of objective `id` (1..7) in its native sense. z2 is the
// coverage numerator. Requires add_objective_linearizations for ids other than 3 and 5.
LinearExpr objective_expression(const BuiltModel& model, int id);

// Same, but transformed so that larger is always better.
LinearExpr canonical_objective_expression(const BuiltModel& model, int id);

// Maximize the number of scheduled defences.
LinearExpr stage1_objective(const BuiltModel& model);

// Schedule from a solved variable vector (values are rounded; x entries > 0.5
// become assignments).
Schedule decode_solution(const BuiltModel& model, const std::vector<double>& values);

// Exact variable assignment realizing a feasible schedule: assignment/event
// vars plus every auxiliary at its forced value. Throws if the schedule uses a
// placement that was not materialized or the model has epsilon-stage columns.
std::vector<double> encode_schedule(const BuiltModel& model, const Schedule& sched);

}  // namespace defsched
