#pragma once

#include <string>
#include <vector>

#include "defsched/types.hpp"

namespace defsched {

struct Violation {
    std::string code;     // stable machine-readable id, e.g. "member_overlap"
    std::string message;  // human-readable description with 1-based indices
};

// Structural validation of an instance: dimensions consistent, profile lengths
// match their windows, windows < duration, values in range. Returns all
// problems found (empty = valid).
std::vector<Violation> validate_instance(const Instance& inst);

// Event-level feasibility of a schedule against a (valid) instance: complete
// committees, eligibility, availability windows, no member/room overlap,
// exactly `num_scheduled` defences placed. Returns all violations found.
std::vector<Violation> check_feasibility(const Instance& inst, const Schedule& sched);

inline bool is_feasible(const Instance& inst, const Schedule& sched) {
    return check_feasibility(inst, sched).empty();
}

}  // namespace defsched
