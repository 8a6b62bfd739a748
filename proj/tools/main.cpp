// Command-line surface: instance generation, the two-stage multi-objective
// solve, independent verification of result files, availability-chain
// analytics, and experiment report tables.

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "defsched/chain.hpp"
#include "defsched/generator.hpp"
#include "defsched/io.hpp"
#include "defsched/objectives.hpp"
#include "defsched/oracle.hpp"
#include "defsched/pareto.hpp"
#include "defsched/solver.hpp"
#include "defsched/types.hpp"
#include "defsched/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailure = 1;
constexpr int kInputError = 2;
constexpr int kSolverFailure = 3;

using defsched::Instance;
using nlohmann::json;

std::string type_string(const Instance& inst) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "p(%d.%d.%d.%d.%d.%d.%d)", inst.n_members, inst.n_defences,
                  inst.n_roles, inst.n_days, inst.n_slots, inst.n_rooms, inst.n_subjects);
    return buf;
}

std::string vec_to_string(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

double zero_fraction_members(const Instance& inst) {
    std::int64_t zeros = 0, total = 0;
    for (const auto& m : inst.members)
        for (const auto& day : m.availability)
            for (int level : day) {
                ++total;
                if (level == 0) ++zeros;
            }
    return total ? static_cast<double>(zeros) / static_cast<double>(total) : 0.0;
}

double zero_fraction_rooms(const Instance& inst) {
    std::int64_t zeros = 0, total = 0;
    for (const auto& day : inst.room_availability)
        for (const auto& slot : day)
            for (auto flag : slot) {
                ++total;
                if (flag == 0) ++zeros;
            }
    return total ? static_cast<double>(zeros) / static_cast<double>(total) : 0.0;
}

int cmd_generate(const std::string& config_path, std::uint64_t seed, const std::string& out_path) {
    defsched::GeneratorConfig cfg;
    try {
        cfg = defsched::generator_config_from_json(defsched::read_json_file(config_path));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
    Instance inst;
    try {
        inst = defsched::generate_instance(cfg, seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
    json doc = defsched::instance_to_json(inst);
    doc["generator"] = {{"config", defsched::generator_config_to_json(cfg)},
                        {"seed", seed},
                        {"type", defsched::instance_type_string(cfg)}};
    try {
        defsched::write_json_file(out_path, doc);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
    std::printf("wrote %s: %s, seed %" PRIu64 "\n", out_path.c_str(),
                defsched::instance_type_string(cfg).c_str(), seed);
    std::printf("  member slots unavailable: %.4f\n", zero_fraction_members(inst));
    std::printf("  room slots unavailable:   %.4f\n", zero_fraction_rooms(inst));
    std::printf("  digest: %s\n", defsched::instance_digest(doc).c_str());
    return kOk;
}

int cmd_solve(const std::string& instance_path, const std::string& run_config_path,
              const std::string& out_path, bool deterministic) {
    Instance inst;
    std::string digest;
    defsched::RunConfig cfg;
    std::string data_label = "-";
    try {
        const json idoc = defsched::read_json_file(instance_path);
        inst = defsched::instance_from_json(idoc);
        digest = defsched::instance_digest(idoc);
        if (!run_config_path.empty()) {
            const json cdoc = defsched::read_json_file(run_config_path);
            cfg = defsched::run_config_from_json(cdoc);
            data_label = cdoc.value("data_label", data_label);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
    if (deterministic) {
        cfg.deterministic = true;
        cfg.solver.deterministic = true;
    }

    try {
        defsched::Solver solver;

        std::printf("stage 1: maximizing the number of scheduled defences (budget %.0fs)\n",
                    cfg.stage1_budget);
        const auto s1 = defsched::find_g(solver, inst, cfg);
        std::printf("stage 1: g = %d (%s) in %.1fs\n", s1.g, s1.optimal ? "optimal" : "incumbent",
                    s1.seconds);

        auto model = defsched::build_base_model(inst);
        defsched::set_g(model, s1.g);
        defsched::add_objective_linearizations(model);

        double payoff_seconds = 0.0;
        const double payoff_budget = std::min(cfg.payoff_budget, cfg.total_budget - s1.seconds);
        const auto table =
            defsched::compute_ideal_nadir(solver, model, cfg, payoff_budget, &payoff_seconds);
        std::printf("payoff table done in %.1fs (tie-break exponent %d)\n", payoff_seconds,
                    table.perturb_exponent);
        for (int j = 0; j < defsched::kNumObjectives; ++j)
            std::printf("  objective %d: ideal %lld, nadir %lld\n", j + 1,
                        static_cast<long long>(table.ideal[static_cast<std::size_t>(j)]),
                        static_cast<long long>(table.nadir[static_cast<std::size_t>(j)]));

        // Project the grid coordinates back to the bound values for the log.
        std::vector<int> active_ids;
        {
            std::vector<int> sorted = cfg.bounded;
            std::sort(sorted.begin(), sorted.end());
            for (int id : sorted)
                if (table.ideal[static_cast<std::size_t>(id - 1)] !=
                    table.nadir[static_cast<std::size_t>(id - 1)])
                    active_ids.push_back(id);
        }
        cfg.progress = [&](const defsched::IterationRecord& rec, std::int64_t index,
                           std::int64_t total) {
            std::string eps = "(";
            for (std::size_t b = 0; b < rec.v.size(); ++b) {
                const auto j = static_cast<std::size_t>(active_ids[b] - 1);
                const double value =
                    static_cast<double>(table.nadir[j]) +
                    static_cast<double>(rec.v[b]) *
                        static_cast<double>(table.ideal[j] - table.nadir[j]) / (cfg.grid_points - 1);
                char buf[48];
                std::snprintf(buf, sizeof(buf), "%s%.2f", b ? "," : "", value);
                eps += buf;
            }
            eps += ")";
            std::printf("[%3lld/%lld] v=%s eps=%s %s %.2fs\n", static_cast<long long>(index),
                        static_cast<long long>(total), vec_to_string(rec.v).c_str(), eps.c_str(),
                        rec.status.c_str(), rec.seconds);
            std::fflush(stdout);
        };

        auto log = defsched::run_augmecon(solver, inst, s1.g, s1.optimal, table, cfg,
                                          s1.seconds + payoff_seconds);
        log.stage1_seconds = s1.seconds;
        log.payoff_seconds = payoff_seconds;

        const json out = defsched::result_to_json(log, digest, defsched::run_config_to_json(cfg),
                                                  type_string(inst), data_label);
        defsched::write_json_file(out_path, out);

        int in_full_front = 0;
        for (const auto& s : log.solutions)
            if (!s.dominated_in_full) ++in_full_front;
        std::printf("done: |N|=%d |I|=%d skipN=%d skipI=%d timeN=%d timeI=%d (grid %lld)\n",
                    log.n_solutions, log.n_infeasible, log.skip_solutions, log.skip_infeasible,
                    log.time_with_incumbent, log.time_without_incumbent,
                    static_cast<long long>(log.grid_size));
        std::printf("      %d of %d solutions stay non-dominated over all seven objectives\n",
                    in_full_front, log.n_solutions);
        std::printf("      wall: stage1 %.1fs, payoff %.1fs, grid %.1fs\n", log.stage1_seconds,
                    log.payoff_seconds, log.grid_seconds);
        std::printf("wrote %s\n", out_path.c_str());
        return kOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kSolverFailure;
    }
}

int cmd_verify(const std::string& instance_path, const std::string& result_path) {
    Instance inst;
    std::string digest;
    defsched::ResultFile res;
    try {
        const json idoc = defsched::read_json_file(instance_path);
        inst = defsched::instance_from_json(idoc);
        digest = defsched::instance_digest(idoc);
        res = defsched::result_from_json(defsched::read_json_file(result_path));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }

    if (res.digest != digest) {
        std::fprintf(stderr, "digest mismatch: result was produced from a different instance\n");
        std::fprintf(stderr, "  result:   %s\n  instance: %s\n", res.digest.c_str(), digest.c_str());
        return kInputError;
    }

    int problems = 0;
    const std::int64_t counted = static_cast<std::int64_t>(res.n_solutions) + res.n_infeasible +
                                 res.skip_solutions + res.skip_infeasible + res.time_with_incumbent +
                                 res.time_without_incumbent;
    if (counted != res.grid_size) {
        std::fprintf(stderr, "counter identity broken: counters sum to %lld, grid size is %lld\n",
                     static_cast<long long>(counted), static_cast<long long>(res.grid_size));
        ++problems;
    }
    if (static_cast<std::size_t>(res.n_solutions) != res.solutions.size()) {
        std::fprintf(stderr, "solution count %d does not match the %zu stored solutions\n",
                     res.n_solutions, res.solutions.size());
        ++problems;
    }
    if (res.iterations.size() != static_cast<std::size_t>(res.grid_size)) {
        std::fprintf(stderr, "iteration trace has %zu entries for a grid of %lld\n",
                     res.iterations.size(), static_cast<long long>(res.grid_size));
        ++problems;
    }

    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
        const auto& s = res.solutions[i];
        const std::string tag = "solution " + std::to_string(i + 1);
        if (s.schedule.num_scheduled != res.g) {
            std::fprintf(stderr, "%s: schedules %d defences, result claims g=%d\n", tag.c_str(),
                         s.schedule.num_scheduled, res.g);
            ++problems;
        }
        const auto report = defsched::verify_solution(inst, s.schedule, s.raw);
        for (const auto& v : report.violations) {
            std::fprintf(stderr, "%s: [%s] %s\n", tag.c_str(), v.code.c_str(), v.message.c_str());
            ++problems;
        }
        for (const auto& m : report.value_mismatches) {
            std::fprintf(stderr, "%s: %s\n", tag.c_str(), m.c_str());
            ++problems;
        }
        if (defsched::canonicalize(s.raw) != s.canonical) {
            std::fprintf(stderr, "%s: canonical vector does not match the raw values\n", tag.c_str());
            ++problems;
        }
        // The solution must satisfy the bounds of the grid cell it came from,
        // in the same integer-scaled arithmetic the solver saw.
        if (s.v.size() != res.active_bounded.size() ||
            s.epsilon_scaled.size() != res.active_bounded.size()) {
            std::fprintf(stderr, "%s: grid coordinates have the wrong dimension\n", tag.c_str());
            ++problems;
            continue;
        }
        for (std::size_t b = 0; b < res.active_bounded.size(); ++b) {
            const int id = res.active_bounded[b];
            const std::int64_t steps = res.active_steps[b];
            const std::int64_t nadir = res.table.nadir[static_cast<std::size_t>(id - 1)];
            const std::int64_t range =
                res.table.ideal[static_cast<std::size_t>(id - 1)] - nadir;
            const std::int64_t bound = steps * nadir + s.v[b] * range;
            if (s.epsilon_scaled[b] != bound) {
                std::fprintf(stderr, "%s: stored bound %lld differs from recomputed %lld\n",
                             tag.c_str(), static_cast<long long>(s.epsilon_scaled[b]),
                             static_cast<long long>(bound));
                ++problems;
            }
            if (steps * s.canonical[static_cast<std::size_t>(id - 1)] < bound) {
                std::fprintf(stderr, "%s: objective %d violates its grid bound\n", tag.c_str(), id);
                ++problems;
            }
        }
    }

    // The dominance flags must agree with a recomputed seven-objective filter.
    std::vector<std::vector<std::int64_t>> all;
    for (const auto& s : res.solutions) all.push_back(s.canonical);
    const auto keep = defsched::pareto_filter(all);
    std::vector<bool> kept(all.size(), false);
    for (auto k : keep) kept[k] = true;
    for (std::size_t i = 0; i < res.solutions.size(); ++i)
        if (res.solutions[i].dominated_in_full == kept[i]) {
            std::fprintf(stderr, "solution %zu: dominance flag disagrees with a recomputation\n",
                         i + 1);
            ++problems;
        }

    if (problems) {
        std::fprintf(stderr, "verification failed: %d problem(s)\n", problems);
        return kVerifyFailure;
    }
    std::printf("verified %zu solution(s): feasibility, objective values, bounds, counters all ok\n",
                res.solutions.size());
    return kOk;
}

int cmd_analyze(const std::string& spec_path) {
    defsched::ChainConfig chain;
    int duration = 1;
    try {
        const json doc = defsched::read_json_file(spec_path);
        duration = doc.value("duration", 1);
        chain.n_avail_states = doc.value("n_avail_states", 1);
        if (doc.contains("self_probs")) chain.self_probs = doc["self_probs"].get<std::vector<double>>();
        chain.target_unavailable = doc.value("target_unavailable", -1.0);
        chain.warmup = doc.value("warmup", 40);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }

    try {
        const auto spec = defsched::resolve_chain(chain, duration);
        if (chain.target_unavailable >= 0.0) {
            std::printf("calibrated availability self-probability for target p(0)=%.4f: %.6f\n",
                        chain.target_unavailable, spec.self_probs.back());
        }

        const auto t = defsched::derive_transition_probs(spec);
        std::vector<std::string> labels;
        for (int r = 1; r < spec.duration; ++r) labels.push_back("0_e" + std::to_string(r));
        labels.push_back("0");
        for (int a = 1; a <= spec.n_avail_states; ++a) labels.push_back(std::to_string(a));

        std::printf("transition matrix over %d states:\n", t.num_states());
        std::printf("%8s", "");
        for (const auto& l : labels) std::printf(" %8s", l.c_str());
        std::printf("\n");
        for (int r = 0; r < t.num_states(); ++r) {
            std::printf("%8s", labels[static_cast<std::size_t>(r)].c_str());
            for (int c = 0; c < t.num_states(); ++c)
                std::printf(" %8.4f", t.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
            std::printf("\n");
        }
        if (spec.duration == 1) std::printf("no exceptional states (duration 1)\n");

        const auto after_warmup = defsched::steady_state(t, spec.warmup);
        std::printf("distribution after the %d-step warm-up (start: plain zero):\n  ", spec.warmup);
        for (double p : after_warmup) std::printf(" %8.4f", p);
        std::printf("\n");

        const auto fixed_point = defsched::stationary_distribution(t);
        std::printf("stationary distribution (power iteration):\n  ");
        for (double p : fixed_point) std::printf(" %8.4f", p);
        std::printf("\n");

        const auto blocks = defsched::expected_block_durations(spec);
        for (int a = 1; a <= spec.n_avail_states; ++a)
            std::printf("expected run of level %d: %.4f slots\n", a,
                        blocks.expected_avail[static_cast<std::size_t>(a)]);
        std::printf("expected unavailability episode: %.4f slots\n", blocks.expected_unavail);
        std::printf("probability a zero slot is forced (exceptional): %.6f\n",
                    defsched::exceptional_prob(spec));

        const auto folded = defsched::solve_distribution_system(spec);
        std::printf("observed-level distribution from the balance equations:\n  ");
        for (double p : folded) std::printf(" %8.4f", p);
        std::printf("\n");

        // Cross-check: fold the expanded fixed point onto observed levels.
        std::vector<double> folded_power(static_cast<std::size_t>(spec.n_avail_states + 1), 0.0);
        for (int s = 0; s < t.num_states(); ++s)
            folded_power[static_cast<std::size_t>(t.level_of_state(s))] +=
                fixed_point[static_cast<std::size_t>(s)];
        double max_diff = 0.0;
        for (std::size_t i = 0; i < folded.size(); ++i)
            max_diff = std::max(max_diff, std::abs(folded[i] - folded_power[i]));
        std::printf("balance equations vs power iteration: max |diff| = %.3e\n", max_diff);
        return kOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInputError;
    }
}

int cmd_report(const std::vector<std::string>& paths) {
    std::vector<defsched::ResultFile> results;
    for (const auto& p : paths) {
        try {
            results.push_back(defsched::result_from_json(defsched::read_json_file(p)));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kInputError;
        }
    }
    std::printf("N;type;data;|N|;|I|;skipN;skipI;timeN;timeI;g;CPU(s)\n");
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::printf("%zu;%s;%s;%d;%d;%d;%d;%d;%d;%d;%.1f\n", i + 1, r.instance_type.c_str(),
                    r.data_label.c_str(), r.n_solutions, r.n_infeasible, r.skip_solutions,
                    r.skip_infeasible, r.time_with_incumbent, r.time_without_incumbent, r.g,
                    r.stage1_seconds + r.payoff_seconds + r.grid_seconds);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective thesis-defence scheduling"};
    app.require_subcommand(1);

    std::string config_path, instance_path, run_config_path, result_path, out_path, spec_path;
    std::vector<std::string> report_paths;
    std::uint64_t seed = 0;
    bool deterministic = false;
    int rc = kOk;

    auto* gen = app.add_subcommand("generate", "Generate a random instance file");
    gen->add_option("--config", config_path, "generator config (JSON)")->required();
    gen->add_option("--seed", seed, "random seed")->required();
    gen->add_option("--out", out_path, "output instance file")->required();
    gen->callback([&] { rc = cmd_generate(config_path, seed, out_path); });

    auto* solve = app.add_subcommand("solve", "Run the two-stage epsilon-grid optimization");
    solve->add_option("--instance", instance_path, "instance file")->required();
    solve->add_option("--run-config", run_config_path, "run config (JSON); defaults when omitted");
    solve->add_option("--out", out_path, "output result file")->required();
    solve->add_flag("--deterministic", deterministic, "fixed solver behaviour for replays");
    solve->callback([&] { rc = cmd_solve(instance_path, run_config_path, out_path, deterministic); });

    auto* verify = app.add_subcommand("verify", "Re-check a result file against its instance");
    verify->add_option("--instance", instance_path, "instance file")->required();
    verify->add_option("--result", result_path, "result file")->required();
    verify->callback([&] { rc = cmd_verify(instance_path, result_path); });

    auto* analyze = app.add_subcommand("analyze", "Availability-chain analytics for a chain spec");
    analyze->add_option("--spec", spec_path, "chain spec (JSON)")->required();
    analyze->callback([&] { rc = cmd_analyze(spec_path); });

    auto* report = app.add_subcommand("report", "Tabulate result files");
    report->add_option("files", report_paths, "result files")->required();
    report->callback([&] { rc = cmd_report(report_paths); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    return rc;
}
