#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "defsched/generator.hpp"
#include "defsched/model_builder.hpp"
#include "defsched/objectives.hpp"
#include "defsched/oracle.hpp"
#include "defsched/validate.hpp"
#include "test_support.hpp"

using namespace defsched;

namespace {

// Every variable of an encoded point must sit exactly on an integer.
bool all_integral(const std::vector<double>& values) {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return v == std::floor(v); });
}

// Build, fix the count, and add the objective machinery in one go.
BuiltModel ready_model(const Instance& inst, int g, bool sparsify = true) {
    BuildOptions opts;
    opts.sparsify = sparsify;
    auto model = build_base_model(inst, opts);
    set_g(model, g);
    add_objective_linearizations(model);
    return model;
}

}  // namespace

TEST_SUITE("model_builder") {

TEST_CASE("encode produces an exactly feasible point, decode inverts it") {
    const auto inst = testsup::hand_instance();
    auto model = ready_model(inst, 2);
    const auto sched = testsup::hand_schedule();

    const auto values = encode_schedule(model, sched);
    REQUIRE(values.size() == model.milp.vars.size());
    CHECK(all_integral(values));
    CHECK(violated_constraints(model.milp, values, 0.0).empty());

    const auto back = decode_solution(model, values);
    CHECK(testsup::sorted_schedule(back) == testsup::sorted_schedule(sched));
}

TEST_CASE("objective expressions reproduce the reference values exactly") {
    const auto inst = testsup::hand_instance();
    auto model = ready_model(inst, 2);
    const auto values = encode_schedule(model, testsup::hand_schedule());
    const auto direct = evaluate_objectives(inst, testsup::hand_schedule());
    for (int id = 1; id <= kNumObjectives; ++id) {
        CHECK(eval_expr_exact(objective_expression(model, id), values) ==
              direct.z[static_cast<std::size_t>(id - 1)]);
        // The canonical form only flips the sign of minimized objectives.
        const auto canon = eval_expr_exact(canonical_objective_expression(model, id), values);
        const auto want = kObjectiveIsMin[static_cast<std::size_t>(id - 1)]
                              ? -direct.z[static_cast<std::size_t>(id - 1)]
                              : direct.z[static_cast<std::size_t>(id - 1)];
        CHECK(canon == want);
    }
    CHECK(eval_expr_exact(stage1_objective(model), values) == 2);
}

TEST_CASE("every enumerated schedule round-trips with identical objective values") {
    // A generated two-day duration-2 instance: the auxiliary channeling has to
    // pin gap rewards, room changes, day counts and coverage for every
    // feasible schedule, not just hand-picked ones.
    const auto cfg = testsup::tiny_config(0);
    const auto inst = generate_instance(cfg, testsup::tiny_seed(0));
    const int g = brute_force_g(inst);
    REQUIRE(g >= 1);

    for (int count = 1; count <= g; ++count) {
        auto model = ready_model(inst, count);
        const auto schedules = brute_force_schedules(inst, count);
        REQUIRE(!schedules.empty());
        for (const auto& sched : schedules) {
            const auto values = encode_schedule(model, sched);
            CHECK(all_integral(values));
            CHECK(violated_constraints(model.milp, values, 0.0).empty());
            CHECK(testsup::sorted_schedule(decode_solution(model, values)) ==
                  testsup::sorted_schedule(sched));

            const auto direct = evaluate_objectives(inst, sched);
            for (int id = 1; id <= kNumObjectives; ++id)
                CHECK(eval_expr_exact(objective_expression(model, id), values) ==
                      direct.z[static_cast<std::size_t>(id - 1)]);
        }
    }
}

TEST_CASE("sparsification only removes never-usable columns") {
    const auto cfg = testsup::tiny_config(1);
    const auto inst = generate_instance(cfg, testsup::tiny_seed(1));
    const int g = brute_force_g(inst);
    REQUIRE(g >= 1);

    auto sparse = ready_model(inst, g, true);
    auto dense = ready_model(inst, g, false);
    CHECK(sparse.milp.vars.size() < dense.milp.vars.size());

    for (const auto& sched : brute_force_schedules(inst, g)) {
        const auto vs = encode_schedule(sparse, sched);
        const auto vd = encode_schedule(dense, sched);
        CHECK(violated_constraints(sparse.milp, vs, 0.0).empty());
        CHECK(violated_constraints(dense.milp, vd, 0.0).empty());
        for (int id = 1; id <= kNumObjectives; ++id)
            CHECK(eval_expr_exact(objective_expression(sparse, id), vs) ==
                  eval_expr_exact(objective_expression(dense, id), vd));
    }
}

TEST_CASE("set_g replaces the count equality in place") {
    const auto inst = testsup::hand_instance();
    auto model = build_base_model(inst);
    const auto rows_before = model.milp.cons.size();
    set_g(model, 1);
    REQUIRE(model.g_row >= 0);
    CHECK(model.milp.cons.size() == rows_before + 1);
    CHECK(model.milp.cons[static_cast<std::size_t>(model.g_row)].rhs == 1.0);
    set_g(model, 2);
    CHECK(model.milp.cons.size() == rows_before + 1);
    CHECK(model.milp.cons[static_cast<std::size_t>(model.g_row)].rhs == 2.0);
}

TEST_CASE("linearization is idempotent") {
    const auto inst = testsup::hand_instance();
    auto model = build_base_model(inst);
    set_g(model, 2);
    add_objective_linearizations(model);
    const auto vars = model.milp.vars.size();
    const auto cons = model.milp.cons.size();
    add_objective_linearizations(model);
    CHECK(model.milp.vars.size() == vars);
    CHECK(model.milp.cons.size() == cons);
}

TEST_CASE("impossible placements have no variables when sparsifying") {
    auto inst = testsup::hand_instance();
    inst.members[2].availability[1].assign(3, 0);  // member 3 never on day 2
    auto model = build_base_model(inst);
    // x lookups for member 3 on day 2 must be absent.
    for (int j = 1; j <= inst.n_defences; ++j)
        for (int t = 1; t <= inst.n_roles; ++t)
            for (int l = 1; l <= inst.n_slots; ++l)
                CHECK(model.idx.x_at(3, j, t, 2, l, 1) == -1);
    // But the schedule that avoids member 3 on day 2 still encodes.
    set_g(model, 2);
    add_objective_linearizations(model);
    const auto values = encode_schedule(model, testsup::hand_schedule());
    CHECK(violated_constraints(model.milp, values, 0.0).empty());
}

TEST_CASE("encode rejects unusable placements and epsilon-stage columns") {
    auto inst = testsup::hand_instance();
    auto model = ready_model(inst, 2);

    // A schedule through a pruned placement cannot be encoded.
    auto dark = inst;
    dark.members[0].availability[0][0] = 0;
    auto dark_model = ready_model(dark, 2);
    CHECK_THROWS_AS(encode_schedule(dark_model, testsup::hand_schedule()), std::invalid_argument);

    // Extra columns (the epsilon machinery adds them) invalidate encoding.
    model.milp.add_var("surplus_3", VarKind::Continuous, 0, 1);
    CHECK_THROWS_AS(encode_schedule(model, testsup::hand_schedule()), std::invalid_argument);
}

TEST_CASE("objective expressions require the linearization where needed") {
    const auto inst = testsup::hand_instance();
    auto model = build_base_model(inst);
    set_g(model, 2);
    // Affinity (3) and preference (5) are linear in x alone; the others are not.
    CHECK_NOTHROW(objective_expression(model, 3));
    CHECK_NOTHROW(objective_expression(model, 5));
    CHECK_THROWS_AS(objective_expression(model, 1), std::logic_error);
    CHECK_THROWS_AS(objective_expression(model, 0), std::invalid_argument);
    CHECK_THROWS_AS(objective_expression(model, 8), std::invalid_argument);
}

}  // TEST_SUITE
