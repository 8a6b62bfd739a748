#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "defsched/generator.hpp"
#include "defsched/pareto.hpp"
#include "defsched/types.hpp"

namespace defsched {

// On-disk formats. Both are versioned JSON documents; parsing rejects unknown
// formats and versions. Lists that represent sets (subjects, eligibility
// pools) are stored as ascending 1-based id lists.
inline constexpr const char* kInstanceFormat = "defence-scheduling-instance";
inline constexpr const char* kResultFormat = "defence-scheduling-result";
inline constexpr int kFormatVersion = 1;

// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

// Content digest of an instance document: SHA-256 over the sorted-key compact
// serialization of its core sections (format, version, meta, members,
// defences, rooms). Annotations such as the generator echo do not affect it.
std::string instance_digest(const nlohmann::json& doc);

// Instance <-> JSON. instance_to_json emits the core sections; callers may
// attach extra top-level annotations afterwards. instance_from_json validates
// shape and content and throws std::runtime_error with a field path on error.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

// Config <-> JSON (all fields optional in the file; defaults applied).
GeneratorConfig generator_config_from_json(const nlohmann::json& doc);
nlohmann::json generator_config_to_json(const GeneratorConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& doc);
nlohmann::json run_config_to_json(const RunConfig& cfg);

// Result documents. Solutions embed their full assignment lists so they can
// be re-verified against the instance without access to the solver.
nlohmann::json result_to_json(const RunLog& log, const std::string& digest,
                              const nlohmann::json& config_echo, const std::string& instance_type,
                              const std::string& data_label);

// Parsed result file: everything a verifier or report needs.
struct ResultFile {
    std::string digest;
    std::string instance_type;
    std::string data_label;
    nlohmann::json config;
    int g = 0;
    bool g_optimal = false;
    IdealNadir table;
    std::vector<int> active_bounded;
    std::vector<int> active_steps;
    std::int64_t grid_size = 0;
    int n_solutions = 0;
    int n_infeasible = 0;
    int skip_solutions = 0;
    int skip_infeasible = 0;
    int time_with_incumbent = 0;
    int time_without_incumbent = 0;
    double stage1_seconds = 0.0;
    double payoff_seconds = 0.0;
    double grid_seconds = 0.0;
    std::vector<SolutionRecord> solutions;
    std::vector<IterationRecord> iterations;
};

ResultFile result_from_json(const nlohmann::json& doc);

// File helpers; errors carry the path. Writing is pretty-printed with a
// trailing newline so files diff cleanly.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace defsched
