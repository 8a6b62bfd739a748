#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace defsched {

// All indices that appear in Assignment and in files are 1-based (member 1..n_i,
// day 1..n_k, hour 1..n_l, ...). Internal containers are 0-based; conversion
// happens only at the struct boundary, e.g. members[a.member - 1].

struct Member {
    std::int64_t weight = 1;                          // importance u_i >= 1
    int max_committees = 0;                           // c_i, cap on committee memberships
    int compact_window = 0;                           // b_i in [0, d-1]
    std::vector<std::int64_t> compact_weights;        // v_i[0..b_i], gap-size reward profile
    int roomchange_window = 0;                        // a_i in [0, d-1]
    std::vector<std::int64_t> roomchange_penalties;   // h_i[0..a_i], gap-size penalty profile
    std::vector<std::uint8_t> subjects;               // r_iq over q = 1..n_q (0/1)
    std::vector<std::vector<int>> availability;       // l_ikl, [day][hour]; 0 = unavailable,
                                                      // level >= 1 available with preference level-1

    std::int64_t max_compact_weight() const {
        std::int64_t m = 0;
        for (auto v : compact_weights) m = std::max(m, v);
        return m;
    }
    std::int64_t max_roomchange_penalty() const {
        std::int64_t m = 0;
        for (auto h : roomchange_penalties) m = std::max(m, h);
        return m;
    }
};

struct Defence {
    std::vector<std::uint8_t> subjects;                  // t̄_jq over q (0/1)
    std::vector<std::vector<std::uint8_t>> eligibility;  // e[role][member] (0/1), role 0-based here
};

struct Instance {
    int n_members = 0;   // n_i
    int n_defences = 0;  // n_j
    int n_roles = 0;     // n_t, committee size
    int n_days = 0;      // n_k
    int n_slots = 0;     // n_l, hours per day
    int n_rooms = 0;     // n_p
    int n_subjects = 0;  // n_q
    int duration = 1;    // d, consecutive slots per defence

    std::vector<Member> members;
    std::vector<Defence> defences;
    std::vector<std::vector<std::vector<std::uint8_t>>> room_availability;  // m[day][hour][room]

    bool member_window_free(int member1, int day1, int start1) const {
        const auto& av = members[static_cast<std::size_t>(member1 - 1)].availability;
        for (int l = start1; l < start1 + duration; ++l)
            if (av[static_cast<std::size_t>(day1 - 1)][static_cast<std::size_t>(l - 1)] == 0) return false;
        return true;
    }
    bool room_window_free(int room1, int day1, int start1) const {
        for (int l = start1; l < start1 + duration; ++l)
            if (room_availability[static_cast<std::size_t>(day1 - 1)][static_cast<std::size_t>(l - 1)]
                                 [static_cast<std::size_t>(room1 - 1)] == 0)
                return false;
        return true;
    }
};

// One member filling one role of one defence at a concrete slot. All fields 1-based.
struct Assignment {
    int member = 0;
    int defence = 0;
    int role = 0;
    int day = 0;
    int hour = 0;  // start slot; the defence occupies [hour, hour + d - 1]
    int room = 0;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Schedule {
    std::vector<Assignment> assignments;
    int num_scheduled = 0;  // g, number of complete committees

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

inline constexpr int kNumObjectives = 7;

// Raw objective values in their native sense. Index 0 holds z1, ..., index 6
// holds z7. The subject-coverage ratio (z2) is stored as its integer numerator;
// the denominator is the constant total subject count over all defences.
struct ObjectiveVector {
    std::array<std::int64_t, kNumObjectives> z{};

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// true where lower is better. z2 (coverage) and z3 (affinity) are maximized.
inline constexpr std::array<bool, kNumObjectives> kObjectiveIsMin = {
    true,   // z1 workload balance penalty
    false,  // z2 subject coverage (numerator)
    false,  // z3 subject affinity
    true,   // z4 schedule compactness penalty
    true,   // z5 slot preference penalty
    true,   // z6 day spread penalty
    true,   // z7 room change penalty
};

inline std::array<std::int64_t, kNumObjectives> to_canonical(const ObjectiveVector& v) {
    std::array<std::int64_t, kNumObjectives> c{};
    for (int i = 0; i < kNumObjectives; ++i)
        c[static_cast<std::size_t>(i)] =
            kObjectiveIsMin[static_cast<std::size_t>(i)] ? -v.z[static_cast<std::size_t>(i)]
                                                         : v.z[static_cast<std::size_t>(i)];
    return c;
}

inline ObjectiveVector from_canonical(const std::array<std::int64_t, kNumObjectives>& c) {
    ObjectiveVector v;
    for (int i = 0; i < kNumObjectives; ++i)
        v.z[static_cast<std::size_t>(i)] =
            kObjectiveIsMin[static_cast<std::size_t>(i)] ? -c[static_cast<std::size_t>(i)]
                                                         : c[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace defsched
