#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "defsched/types.hpp"
#include "defsched/validate.hpp"

namespace defsched {

// Limits for the exhaustive searches below. These exist so a mis-sized input
// fails loudly instead of hanging the test suite; they are not tuning knobs.
struct EnumerationBudget {
    std::int64_t max_nodes = 200'000'000;  // search-tree nodes visited
    double max_seconds = 600.0;            // wall clock
};

// Thrown when a brute-force search runs out of budget. For the stage-1 search
// the best count found so far is carried along as a certified lower bound.
class BudgetExhausted : public std::runtime_error {
  public:
    BudgetExhausted(const std::string& what, int lower_bound)
        : std::runtime_error(what), best_lower_bound(lower_bound) {}
    int best_lower_bound = 0;
};

// Maximum number of defences that any feasible schedule can hold, found by
// depth-first search over defences (fewest-options-first) with incremental
// conflict tracking. Only viable on tiny instances.
int brute_force_g(const Instance& inst, const EnumerationBudget& budget = {});

// Canonical objective vectors of every feasible schedule with exactly g
// scheduled defences, deduplicated and sorted. The ground truth that
// brute_force_pareto filters.
std::vector<std::vector<std::int64_t>> brute_force_vectors(const Instance& inst, int g,
                                                           const EnumerationBudget& budget = {});

// Non-dominated subset of brute_force_vectors: the exact Pareto front over
// all seven canonical objectives.
std::vector<std::vector<std::int64_t>> brute_force_pareto(const Instance& inst, int g,
                                                          const EnumerationBudget& budget = {});

// Every feasible schedule with exactly g scheduled defences, one per leaf of
// the search tree (no deduplication). Grows combinatorially; callers size
// their instances so the list stays in the thousands.
std::vector<Schedule> brute_force_schedules(const Instance& inst, int g,
                                            const EnumerationBudget& budget = {});

// Independent recheck of a claimed solution: feasibility via check_feasibility
// plus an exact integer comparison of re-evaluated objectives against the
// claimed vector.
struct VerifyReport {
    bool ok = false;
    std::vector<Violation> violations;        // feasibility problems, if any
    std::vector<std::string> value_mismatches;  // objective discrepancies, if any
};

VerifyReport verify_solution(const Instance& inst, const Schedule& sched,
                             const ObjectiveVector& claimed);

}  // namespace defsched
