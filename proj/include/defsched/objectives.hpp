#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "defsched/types.hpp"

namespace defsched {

// Exact integer evaluation of all seven objectives on a feasible schedule.
// Throws std::invalid_argument if the schedule is infeasible (evaluation
// semantics are only defined there).
ObjectiveVector evaluate_objectives(const Instance& inst, const Schedule& sched);

// Canonical form: every component transformed so that larger is better
// (minimized objectives are negated). Used by dominance tests and the
// epsilon-grid engine.
std::vector<std::int64_t> canonicalize(const ObjectiveVector& v);

// Pareto dominance on canonical (max-form) vectors of equal length:
// a dominates b iff a >= b componentwise and a != b.
bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

// Indices of non-dominated vectors, preserving input order; duplicates of a
// kept vector are all kept (they do not dominate each other).
std::vector<std::size_t> pareto_filter(const std::vector<std::vector<std::int64_t>>& vectors);

// Denominator of the subject-coverage ratio: total subject count over all
// defences (constant for a fixed instance).
std::int64_t coverage_denominator(const Instance& inst);

}  // namespace defsched
