#include "defsched/pareto.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "defsched/objectives.hpp"

namespace defsched {

namespace {

constexpr double kMinSolveSeconds = 0.1;

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

void validate_config(const RunConfig& cfg) {
    if (cfg.primary < 1 || cfg.primary > kNumObjectives)
        throw std::invalid_argument("run config: primary objective id must be 1..7");
    if (cfg.grid_points < 2) throw std::invalid_argument("run config: need at least 2 grid points");
    std::vector<int> seen;
    for (int id : cfg.bounded) {
        if (id < 1 || id > kNumObjectives)
            throw std::invalid_argument("run config: bounded objective ids must be 1..7");
        if (id == cfg.primary)
            throw std::invalid_argument("run config: the primary objective cannot be bounded");
        if (std::find(seen.begin(), seen.end(), id) != seen.end())
            throw std::invalid_argument("run config: duplicate bounded objective id");
        seen.push_back(id);
    }
}

// Interval width of an expression over the variable box; used to size the
// tie-break exponent so the perturbation can never outweigh a unit step.
double expression_swing(const LinearExpr& e, const AbstractMilp& m) {
    double lo = 0.0, hi = 0.0;
    for (const auto& t : e.terms) {
        const auto& v = m.vars[static_cast<std::size_t>(t.var)];
        const double a = t.coef * v.lb, b = t.coef * v.ub;
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return hi - lo;
}

// The full cell-solving apparatus, shared by the grid sweep and the
// single-cell replay so that both solve identical models.
struct GridModel {
    BuiltModel model;
    EpsilonState st;                // active bounded objectives and their steps
    std::vector<int> epsilon_rows;  // one bound row per active objective
    std::vector<LinearExpr> bounded_expr;
    std::array<LinearExpr, kNumObjectives> canon_expr;
    int dropped_zero_range = 0;
};

GridModel make_grid_model(const Instance& inst, int g, const IdealNadir& table, const RunConfig& cfg) {
    GridModel gm;
    gm.model = build_base_model(inst);
    set_g(gm.model, g);
    add_objective_linearizations(gm.model);

    std::vector<int> sorted_bounded = cfg.bounded;
    std::sort(sorted_bounded.begin(), sorted_bounded.end());
    for (int id : sorted_bounded) {
        const auto j = static_cast<std::size_t>(id - 1);
        if (table.ideal[j] == table.nadir[j]) {
            ++gm.dropped_zero_range;  // pinned objective: no grid dimension for it
            continue;
        }
        gm.st.bounded.push_back(id);
        gm.st.num_steps.push_back(cfg.grid_points - 1);
    }
    gm.st.v.assign(gm.st.bounded.size(), 0);

    // Augmented objective: canonical primary plus a sub-unit reward for surplus
    // above the bounds, so every optimum is efficient over primary + bounded.
    const double phi = 1.0 / (static_cast<double>(cfg.bounded.size()) + 0.1);
    LinearExpr objective = canonical_objective_expression(gm.model, cfg.primary);
    objective.constant += phi * gm.dropped_zero_range;

    gm.epsilon_rows.assign(gm.st.bounded.size(), -1);
    gm.bounded_expr.resize(gm.st.bounded.size());
    for (std::size_t b = 0; b < gm.st.bounded.size(); ++b) {
        const int id = gm.st.bounded[b];
        const auto j = static_cast<std::size_t>(id - 1);
        const auto range = static_cast<double>(table.ideal[j] - table.nadir[j]);
        gm.bounded_expr[b] = canonical_objective_expression(gm.model, id);

        const int sv =
            gm.model.milp.add_var("surplus_" + std::to_string(id), VarKind::Continuous, 0.0, 1.0);
        objective.add(sv, phi);

        // range * surplus <= z(x) - nadir; the reward pushes surplus up to it.
        std::vector<LinTerm> def = gm.bounded_expr[b].terms;
        def.push_back({sv, -range});
        gm.model.milp.add_constraint("surplusdef_" + std::to_string(id), std::move(def), Rel::GE,
                                     static_cast<double>(table.nadir[j]) - gm.bounded_expr[b].constant);

        // Grid bound, integer-scaled: num_steps * z(x) >= num_steps * nadir + v * range.
        std::vector<LinTerm> eps = gm.bounded_expr[b].terms;
        for (auto& t : eps) t.coef *= gm.st.num_steps[b];
        gm.epsilon_rows[b] = gm.model.milp.add_constraint(
            "epsilon_" + std::to_string(id), std::move(eps), Rel::GE,
            static_cast<double>(scaled_epsilon(gm.st, table, b, 0)) -
                gm.st.num_steps[b] * gm.bounded_expr[b].constant);
    }
    // Objectives outside the grid would otherwise float between tie-equivalent
    // vertices, making re-solves land on arbitrary members of a tie class. A
    // reward far below the surplus granularity (phi / max range per bounded
    // unit) pins every solve, including a later isolated replay, to one vertex.
    double max_range = 1.0;
    for (std::size_t b = 0; b < gm.st.bounded.size(); ++b) {
        const auto j = static_cast<std::size_t>(gm.st.bounded[b] - 1);
        max_range = std::max(max_range, static_cast<double>(table.ideal[j] - table.nadir[j]));
    }
    LinearExpr others;
    for (int id = 1; id <= kNumObjectives; ++id) {
        if (id == cfg.primary) continue;
        if (std::find(gm.st.bounded.begin(), gm.st.bounded.end(), id) != gm.st.bounded.end())
            continue;
        others.add(canonical_objective_expression(gm.model, id), 1.0);
    }
    const double psi = phi / ((expression_swing(others, gm.model.milp) + 1.0) * max_range * 10.0);
    objective.add(others, psi);

    gm.model.milp.objective = std::move(objective);
    gm.model.milp.sense = ObjSense::Maximize;

    for (int id = 1; id <= kNumObjectives; ++id)
        gm.canon_expr[static_cast<std::size_t>(id - 1)] = canonical_objective_expression(gm.model, id);
    return gm;
}

// Re-points every bound row at cell v; returns the scaled bounds.
std::vector<std::int64_t> set_cell(GridModel& gm, const IdealNadir& table, const std::vector<int>& v) {
    if (v.size() != gm.st.bounded.size())
        throw std::invalid_argument("set_cell: v has the wrong number of coordinates");
    std::vector<std::int64_t> eps_scaled(gm.st.bounded.size(), 0);
    for (std::size_t b = 0; b < gm.st.bounded.size(); ++b) {
        if (v[b] < 0 || v[b] > gm.st.num_steps[b])
            throw std::invalid_argument("set_cell: coordinate outside the grid");
        eps_scaled[b] = scaled_epsilon(gm.st, table, b, v[b]);
        std::vector<LinTerm> eps = gm.bounded_expr[b].terms;
        for (auto& t : eps) t.coef *= gm.st.num_steps[b];
        gm.model.milp.replace_constraint(
            gm.epsilon_rows[b], std::move(eps), Rel::GE,
            static_cast<double>(eps_scaled[b]) - gm.st.num_steps[b] * gm.bounded_expr[b].constant);
    }
    return eps_scaled;
}

}  // namespace

std::int64_t EpsilonState::grid_size() const {
    std::int64_t total = 1;
    for (int s : num_steps) total *= s + 1;
    return total;
}

void update_v(EpsilonState& st) {
    if (st.v.size() != st.bounded.size() || st.num_steps.size() != st.bounded.size())
        throw std::invalid_argument("update_v: inconsistent state");
    for (std::size_t b = 0; b < st.v.size(); ++b) {
        if (st.v[b] < st.num_steps[b]) {
            ++st.v[b];
            std::fill(st.v.begin(), st.v.begin() + static_cast<std::ptrdiff_t>(b), 0);
            return;
        }
    }
    std::fill(st.v.begin(), st.v.end(), 0);
    st.done = true;
}

std::int64_t scaled_epsilon(const EpsilonState& st, const IdealNadir& table, std::size_t b, int v_b) {
    const auto id = static_cast<std::size_t>(st.bounded[b] - 1);
    const std::int64_t range = table.ideal[id] - table.nadir[id];
    return static_cast<std::int64_t>(st.num_steps[b]) * table.nadir[id] +
           static_cast<std::int64_t>(v_b) * range;
}

bool skip_solutions(const EpsilonState& st, const IdealNadir& table,
                    const std::vector<std::vector<std::int64_t>>& accepted_canonical,
                    const std::vector<int>& v) {
    for (const auto& z : accepted_canonical) {
        bool covers = true;
        for (std::size_t b = 0; b < st.bounded.size() && covers; ++b) {
            const auto id = static_cast<std::size_t>(st.bounded[b] - 1);
            covers = static_cast<std::int64_t>(st.num_steps[b]) * z[id] >=
                     scaled_epsilon(st, table, b, v[b]);
        }
        if (covers) return true;
    }
    return false;
}

bool skip_inf_models(const std::vector<std::vector<int>>& infeasible_cells, const std::vector<int>& v) {
    for (const auto& cell : infeasible_cells) {
        bool tighter_everywhere = true;
        for (std::size_t b = 0; b < v.size() && tighter_everywhere; ++b)
            tighter_everywhere = v[b] >= cell[b];
        if (tighter_everywhere) return true;
    }
    return false;
}

StageOne find_g(Solver& solver, const Instance& inst, const RunConfig& cfg) {
    validate_config(cfg);
    BuiltModel model = build_base_model(inst);
    model.milp.objective = stage1_objective(model);
    model.milp.sense = ObjSense::Maximize;

    const auto r = solver.solve(model.milp, cfg.stage1_budget, cfg.solver);
    StageOne out;
    out.seconds = r.seconds;
    switch (r.status) {
        case SolveStatus::Optimal:
            out.g = static_cast<int>(std::llround(r.objective));
            out.optimal = true;
            break;
        case SolveStatus::FeasibleTimeLimit:
            out.g = static_cast<int>(std::llround(r.objective));
            out.optimal = false;
            break;
        case SolveStatus::Infeasible:
            // The empty schedule always satisfies the feasibility core.
            throw std::runtime_error("find_g: solver reported infeasible, which cannot happen");
        case SolveStatus::Unknown:
            throw std::runtime_error("find_g: no incumbent within the stage budget: " + r.message);
    }
    return out;
}

IdealNadir compute_ideal_nadir(Solver& solver, BuiltModel& model, const RunConfig& cfg, double budget,
                               double* seconds_out) {
    if (!model.linearized || model.g_row < 0)
        throw std::logic_error("compute_ideal_nadir: model needs set_g and linearizations");

    std::array<LinearExpr, kNumObjectives> expr;
    double swing_total = 0.0;
    for (int id = 1; id <= kNumObjectives; ++id) {
        expr[static_cast<std::size_t>(id - 1)] = canonical_objective_expression(model, id);
        swing_total += expression_swing(expr[static_cast<std::size_t>(id - 1)], model.milp);
    }

    IdealNadir table;
    int e = 1;
    while (e < 15 && std::pow(10.0, -e) * (1.0 + swing_total) >= 1.0) ++e;
    if (std::pow(10.0, -e) * (1.0 + swing_total) >= 1.0)
        throw std::runtime_error("compute_ideal_nadir: objective magnitudes too large for the tie-break");
    table.perturb_exponent = e;
    const double tie = std::pow(10.0, -e);

    const Instance& inst = *model.instance;
    const double per_solve = budget > 0 ? budget / kNumObjectives : -1.0;
    double used = 0.0;

    for (int i = 1; i <= kNumObjectives; ++i) {
        LinearExpr obj = expr[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= kNumObjectives; ++j)
            if (j != i) obj.add(expr[static_cast<std::size_t>(j - 1)], tie);
        model.milp.objective = std::move(obj);
        model.milp.sense = ObjSense::Maximize;

        const auto r = solver.solve(model.milp, per_solve, cfg.solver);
        used += r.seconds;
        if (r.status == SolveStatus::Infeasible)
            throw std::runtime_error("compute_ideal_nadir: model infeasible; committee count is wrong");
        if (r.status == SolveStatus::Unknown)
            throw std::runtime_error("compute_ideal_nadir: no incumbent for objective " +
                                     std::to_string(i) + ": " + r.message);
        table.row_optimal[static_cast<std::size_t>(i - 1)] = r.status == SolveStatus::Optimal;

        // Exact row from the decoded schedule; never trust float arithmetic here.
        const Schedule s = decode_solution(model, r.values);
        const auto canon = canonicalize(evaluate_objectives(inst, s));
        for (int j = 0; j < kNumObjectives; ++j)
            table.payoff[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] =
                canon[static_cast<std::size_t>(j)];
    }

    for (int j = 0; j < kNumObjectives; ++j) {
        table.ideal[static_cast<std::size_t>(j)] =
            table.payoff[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
        std::int64_t lo = table.payoff[0][static_cast<std::size_t>(j)];
        for (int r = 1; r < kNumObjectives; ++r)
            lo = std::min(lo, table.payoff[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]);
        table.nadir[static_cast<std::size_t>(j)] = lo;
        if (table.ideal[static_cast<std::size_t>(j)] < lo)
            throw std::logic_error("compute_ideal_nadir: diagonal below column minimum");
    }
    if (seconds_out) *seconds_out = used;
    return table;
}

RunLog run_augmecon(Solver& solver, const Instance& inst, int g, bool g_optimal,
                    const IdealNadir& table, const RunConfig& cfg, double consumed_seconds) {
    validate_config(cfg);
    GridModel gm = make_grid_model(inst, g, table, cfg);

    RunLog log;
    log.g = g;
    log.g_optimal = g_optimal;
    log.table = table;
    log.active_bounded = gm.st.bounded;
    log.active_steps = gm.st.num_steps;
    log.grid_size = gm.st.grid_size();

    std::vector<std::vector<std::int64_t>> accepted;
    const double t_start = now_seconds();
    const std::int64_t total = log.grid_size;

    for (std::int64_t cell = 0; cell < total; ++cell) {
        if (gm.st.done) throw std::logic_error("run_augmecon: grid walker finished early");
        IterationRecord rec;
        rec.v = gm.st.v;

        bool handled = false;
        if (cell > 0) {
            if (skip_solutions(gm.st, table, accepted, gm.st.v)) {
                ++log.skip_solutions;
                rec.status = "skip_solutions";
                handled = true;
            } else if (skip_inf_models(log.infeasible_cells, gm.st.v)) {
                ++log.skip_infeasible;
                rec.status = "skip_infeasible";
                handled = true;
            }
        }

        if (!handled) {
            const auto eps_scaled = set_cell(gm, table, gm.st.v);

            const double used = consumed_seconds + (now_seconds() - t_start);
            const double remaining_budget = cfg.total_budget - used;
            const double limit =
                std::max(kMinSolveSeconds, remaining_budget / static_cast<double>(total - cell));
            const auto r = solver.solve(gm.model.milp, limit, cfg.solver);
            rec.seconds = r.seconds;

            switch (r.status) {
                case SolveStatus::Optimal: {
                    const Schedule s = decode_solution(gm.model, r.values);
                    const auto raw = evaluate_objectives(inst, s);
                    const auto canon = canonicalize(raw);
                    // The solved expressions must agree with direct evaluation.
                    for (int id = 1; id <= kNumObjectives; ++id)
                        if (eval_expr_exact(gm.canon_expr[static_cast<std::size_t>(id - 1)],
                                            r.values) != canon[static_cast<std::size_t>(id - 1)])
                            throw std::logic_error(
                                "run_augmecon: expression/evaluation mismatch for objective " +
                                std::to_string(id));
                    for (std::size_t b = 0; b < gm.st.bounded.size(); ++b)
                        if (static_cast<std::int64_t>(gm.st.num_steps[b]) *
                                canon[static_cast<std::size_t>(gm.st.bounded[b] - 1)] <
                            eps_scaled[b])
                            throw std::logic_error("run_augmecon: solution violates its own bound");

                    if (std::find(accepted.begin(), accepted.end(), canon) != accepted.end()) {
                        ++log.skip_solutions;  // re-derived an existing point
                        rec.status = "duplicate";
                    } else {
                        accepted.push_back(canon);
                        SolutionRecord sr;
                        sr.schedule = s;
                        sr.raw = raw;
                        sr.canonical = canon;
                        sr.v = gm.st.v;
                        sr.epsilon_scaled = eps_scaled;
                        log.solutions.push_back(std::move(sr));
                        ++log.n_solutions;
                        rec.status = "optimal";
                    }
                    break;
                }
                case SolveStatus::Infeasible:
                    ++log.n_infeasible;
                    log.infeasible_cells.push_back(gm.st.v);
                    rec.status = "infeasible";
                    break;
                case SolveStatus::FeasibleTimeLimit:
                    ++log.time_with_incumbent;
                    rec.status = "time_limit_feasible";
                    break;
                case SolveStatus::Unknown:
                    ++log.time_without_incumbent;
                    rec.status = "time_limit_unknown";
                    break;
            }
        }

        log.iterations.push_back(rec);
        if (cfg.progress) cfg.progress(log.iterations.back(), cell + 1, total);
        update_v(gm.st);
    }
    if (!gm.st.done) throw std::logic_error("run_augmecon: grid walker did not finish");

    log.grid_seconds = now_seconds() - t_start;

    const std::int64_t counted = log.n_solutions + log.n_infeasible + log.skip_solutions +
                                 log.skip_infeasible + log.time_with_incumbent +
                                 log.time_without_incumbent;
    if (counted != log.grid_size)
        throw std::logic_error("run_augmecon: iteration counters do not add up to the grid size");

    // Flag solutions that a full seven-objective comparison would discard.
    std::vector<std::vector<std::int64_t>> all;
    all.reserve(log.solutions.size());
    for (const auto& s : log.solutions) all.push_back(s.canonical);
    const auto keep = pareto_filter(all);
    std::vector<bool> kept(log.solutions.size(), false);
    for (auto i : keep) kept[i] = true;
    for (std::size_t i = 0; i < log.solutions.size(); ++i)
        log.solutions[i].dominated_in_full = !kept[i];

    return log;
}

SolveResult solve_single_cell(Solver& solver, const Instance& inst, int g, const IdealNadir& table,
                              const RunConfig& cfg, const std::vector<int>& v, double time_limit,
                              Schedule* schedule_out, std::vector<std::int64_t>* canonical_out) {
    validate_config(cfg);
    GridModel gm = make_grid_model(inst, g, table, cfg);
    set_cell(gm, table, v);
    const auto r = solver.solve(gm.model.milp, time_limit, cfg.solver);
    if (r.status == SolveStatus::Optimal || r.status == SolveStatus::FeasibleTimeLimit) {
        const Schedule s = decode_solution(gm.model, r.values);
        if (canonical_out) *canonical_out = canonicalize(evaluate_objectives(inst, s));
        if (schedule_out) *schedule_out = s;
    }
    return r;
}

RunLog run_full(Solver& solver, const Instance& inst, const RunConfig& cfg) {
    validate_config(cfg);
    const double t_start = now_seconds();

    const StageOne s1 = find_g(solver, inst, cfg);

    BuiltModel model = build_base_model(inst);
    set_g(model, s1.g);
    add_objective_linearizations(model);

    double payoff_seconds = 0.0;
    const double payoff_budget =
        std::min(cfg.payoff_budget, cfg.total_budget - (now_seconds() - t_start));
    const IdealNadir table = compute_ideal_nadir(solver, model, cfg, payoff_budget, &payoff_seconds);

    RunLog log = run_augmecon(solver, inst, s1.g, s1.optimal, table, cfg, now_seconds() - t_start);
    log.stage1_seconds = s1.seconds;
    log.payoff_seconds = payoff_seconds;
    return log;
}

}  // namespace defsched
