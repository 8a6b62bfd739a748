#include "defsched/objectives.hpp"

#include <map>
#include <stdexcept>

#include "defsched/validate.hpp"

namespace defsched {

std::int64_t coverage_denominator(const Instance& inst) {
    std::int64_t total = 0;
    for (const auto& d : inst.defences)
        for (auto s : d.subjects) total += s;
    return total;
}

ObjectiveVector evaluate_objectives(const Instance& inst, const Schedule& sched) {
    if (auto v = check_feasibility(inst, sched); !v.empty())
        throw std::invalid_argument("evaluate_objectives: infeasible schedule (" + v.front().message + ")");

    const int d = inst.duration;
    ObjectiveVector out;

    // Per-member assignment lists and committee membership.
    std::vector<std::vector<Assignment>> per_member(static_cast<std::size_t>(inst.n_members));
    std::map<int, std::vector<int>> committee;  // defence -> member ids
    for (const auto& a : sched.assignments) {
        per_member[static_cast<std::size_t>(a.member - 1)].push_back(a);
        committee[a.defence].push_back(a.member);
    }

    std::int64_t z1 = 0, z2 = 0, z3 = 0, z4 = 0, z5 = 0, z6 = 0, z7 = 0;

    // z2: count of (defence, required subject) pairs covered by at least one
    // committee member. Unscheduled defences cover nothing.
    for (const auto& [j, members] : committee) {
        const auto& dfc = inst.defences[static_cast<std::size_t>(j - 1)];
        for (int q = 0; q < inst.n_subjects; ++q) {
            if (!dfc.subjects[static_cast<std::size_t>(q)]) continue;
            for (int i : members)
                if (inst.members[static_cast<std::size_t>(i - 1)].subjects[static_cast<std::size_t>(q)]) {
                    ++z2;
                    break;
                }
        }
    }

    // z3: subject affinity summed over every committee seat.
    for (const auto& a : sched.assignments) {
        const auto& m = inst.members[static_cast<std::size_t>(a.member - 1)];
        const auto& dfc = inst.defences[static_cast<std::size_t>(a.defence - 1)];
        for (int q = 0; q < inst.n_subjects; ++q)
            z3 += static_cast<std::int64_t>(m.subjects[static_cast<std::size_t>(q)]) *
                  static_cast<std::int64_t>(dfc.subjects[static_cast<std::size_t>(q)]);
    }

    for (int i = 1; i <= inst.n_members; ++i) {
        const auto& m = inst.members[static_cast<std::size_t>(i - 1)];
        const auto& mine = per_member[static_cast<std::size_t>(i - 1)];
        const auto workload = static_cast<std::int64_t>(mine.size());

        z1 += m.weight * workload * workload;

        std::vector<std::uint8_t> day_active(static_cast<std::size_t>(inst.n_days) + 1, 0);
        for (const auto& a : mine) day_active[static_cast<std::size_t>(a.day)] = 1;
        std::int64_t days = 0;
        for (auto f : day_active) days += f;
        z6 += m.weight * days * days;

        // z5: preference level at the start slot (level 1 is ideal -> 0 penalty).
        for (const auto& a : mine) {
            const int level =
                m.availability[static_cast<std::size_t>(a.day - 1)][static_cast<std::size_t>(a.hour - 1)];
            z5 += m.weight * static_cast<std::int64_t>(level - 1);
        }

        // Compactness reward and room-change penalty: for each assignment, look
        // for another same-day assignment ending delta slots before its start.
        std::int64_t compact = 0;
        std::int64_t roomchg = 0;
        for (const auto& a : mine)
            for (const auto& b : mine) {
                if (&a == &b || a.day != b.day) continue;
                const int delta = a.hour - b.hour - d;  // gap between b's end and a's start
                if (delta >= 0 && delta <= m.compact_window)
                    compact += m.compact_weights[static_cast<std::size_t>(delta)];
                if (delta >= 0 && delta <= m.roomchange_window && a.room != b.room)
                    roomchg += m.roomchange_penalties[static_cast<std::size_t>(delta)];
            }

        // Each assignment beyond the first could at best follow another one at
        // the most-rewarded gap; shortfall from that bound is the penalty.
        z4 += m.weight * (m.max_compact_weight() * std::max<std::int64_t>(workload - 1, 0) - compact);
        z7 += m.weight * roomchg;
    }

    out.z = {z1, z2, z3, z4, z5, z6, z7};
    return out;
}

std::vector<std::int64_t> canonicalize(const ObjectiveVector& v) {
    auto c = to_canonical(v);
    return {c.begin(), c.end()};
}

bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: dimension mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strict = true;
    }
    return strict;
}

std::vector<std::size_t> pareto_filter(const std::vector<std::vector<std::int64_t>>& vectors) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < vectors.size() && !dominated; ++j)
            if (j != i && dominates(vectors[j], vectors[i])) dominated = true;
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

}  // namespace defsched
