#pragma once

// Hand-built fixtures and the seeded tiny-instance family shared by the unit
// and acceptance suites. Everything here is deterministic.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "defsched/generator.hpp"
#include "defsched/types.hpp"
#include "defsched/validate.hpp"

namespace testsup {

// Member available at level 1 in every slot; profiles sized for duration-1
// windows of length 0 (single-entry profiles).
inline defsched::Member full_member(std::int64_t weight, int cap, int n_days, int n_slots,
                                    std::vector<std::uint8_t> subjects) {
    defsched::Member m;
    m.weight = weight;
    m.max_committees = cap;
    m.compact_window = 0;
    m.compact_weights = {1};
    m.roomchange_window = 0;
    m.roomchange_penalties = {1};
    m.subjects = std::move(subjects);
    m.availability.assign(static_cast<std::size_t>(n_days),
                          std::vector<int>(static_cast<std::size_t>(n_slots), 1));
    return m;
}

inline std::vector<std::vector<std::vector<std::uint8_t>>> full_rooms(int n_days, int n_slots,
                                                                      int n_rooms) {
    return std::vector<std::vector<std::vector<std::uint8_t>>>(
        static_cast<std::size_t>(n_days),
        std::vector<std::vector<std::uint8_t>>(static_cast<std::size_t>(n_slots),
                                               std::vector<std::uint8_t>(
                                                   static_cast<std::size_t>(n_rooms), 1)));
}

inline defsched::Defence open_defence(std::vector<std::uint8_t> subjects, int n_roles,
                                      int n_members) {
    defsched::Defence d;
    d.subjects = std::move(subjects);
    d.eligibility.assign(static_cast<std::size_t>(n_roles),
                         std::vector<std::uint8_t>(static_cast<std::size_t>(n_members), 1));
    return d;
}

// Three members, two defences, two roles, one day pair, three slots, duration
// 1. Everyone always available at level 1; all profiles {1}. Objective values
// of the reference schedule below were computed by hand:
//   z1 = 7, z2 = 2, z3 = 2, z4 = 0, z5 = 0, z6 = 4, z7 = 0.
inline defsched::Instance hand_instance(int n_rooms = 1) {
    defsched::Instance inst;
    inst.n_members = 3;
    inst.n_defences = 2;
    inst.n_roles = 2;
    inst.n_days = 2;
    inst.n_slots = 3;
    inst.n_rooms = n_rooms;
    inst.n_subjects = 2;
    inst.duration = 1;
    inst.members.push_back(full_member(1, 2, 2, 3, {1, 0}));
    inst.members.push_back(full_member(2, 2, 2, 3, {0, 1}));
    inst.members.push_back(full_member(1, 2, 2, 3, {0, 0}));
    inst.defences.push_back(open_defence({1, 0}, 2, 3));
    inst.defences.push_back(open_defence({1, 1}, 2, 3));
    inst.room_availability = full_rooms(2, 3, n_rooms);
    return inst;
}

// The schedule whose objective values are quoted above: defence 1 at
// (day 1, hour 1, room 1) with members 1/2, defence 2 at (day 1, hour 2,
// room 1) with members 1/3.
inline defsched::Schedule hand_schedule() {
    defsched::Schedule s;
    s.assignments = {
        {1, 1, 1, 1, 1, 1},
        {2, 1, 2, 1, 1, 1},
        {1, 2, 1, 1, 2, 1},
        {3, 2, 2, 1, 2, 1},
    };
    s.num_scheduled = 2;
    return s;
}

inline bool has_code(const std::vector<defsched::Violation>& v, const std::string& code) {
    return std::any_of(v.begin(), v.end(), [&](const auto& x) { return x.code == code; });
}

// Assignments in a stable order so schedules can be compared for equality
// regardless of how they were produced.
inline defsched::Schedule sorted_schedule(defsched::Schedule s) {
    std::sort(s.assignments.begin(), s.assignments.end(), [](const auto& a, const auto& b) {
        return std::tie(a.defence, a.role, a.member, a.day, a.hour, a.room) <
               std::tie(b.defence, b.role, b.member, b.day, b.hour, b.room);
    });
    return s;
}

// Family of small generator configs used for oracle-vs-solver comparisons.
// All have duration 2 and stay within n_members <= 5, n_defences <= 3,
// n_days <= 2, n_slots <= 6, n_rooms <= 2, so exhaustive search is cheap.
// Availability chains are mild enough that most seeds schedule something.
inline defsched::GeneratorConfig tiny_config(int index) {
    struct Shape {
        int n_i, n_j, n_t, n_k, n_l, n_p, n_q;
        std::vector<defsched::RolePoolSpec> roles;
    };
    static const std::vector<Shape> shapes = {
        {4, 2, 2, 2, 4, 1, 3, {{0, false}, {0, false}}},
        {5, 3, 2, 2, 5, 2, 3, {{3, false}, {0, true}}},
        {3, 2, 1, 1, 6, 1, 2, {{0, false}}},
        {5, 3, 2, 2, 6, 2, 4, {{0, false}, {4, false}}},
        {4, 3, 2, 2, 4, 1, 3, {{0, false}, {3, true}}},
    };
    const auto& sh = shapes[static_cast<std::size_t>(index) % shapes.size()];

    defsched::GeneratorConfig cfg;
    cfg.n_members = sh.n_i;
    cfg.n_defences = sh.n_j;
    cfg.n_roles = sh.n_t;
    cfg.n_days = sh.n_k;
    cfg.n_slots = sh.n_l;
    cfg.n_rooms = sh.n_p;
    cfg.n_subjects = sh.n_q;
    cfg.duration = 2;
    cfg.committee_cap_fraction = 0.6;
    cfg.subjects_per_member = 1;
    cfg.subjects_per_defence = 2;
    cfg.roles = sh.roles;
    cfg.member_chain.n_avail_states = 2;
    cfg.member_chain.self_probs = {0.5, 0.75, 0.75};
    cfg.room_chain.n_avail_states = 1;
    cfg.room_chain.self_probs = {0.3, 0.85};
    return cfg;
}

inline std::uint64_t tiny_seed(int index) { return 1000 + static_cast<std::uint64_t>(index); }

}  // namespace testsup
