#include "defsched/validate.hpp"

#include <map>
#include <sstream>

namespace defsched {

namespace {

std::string fmt(const Assignment& a) {
    std::ostringstream os;
    os << "(member " << a.member << ", defence " << a.defence << ", role " << a.role << ", day "
       << a.day << ", hour " << a.hour << ", room " << a.room << ")";
    return os.str();
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
    std::vector<Violation> out;
    auto add = [&](const char* code, std::string msg) { out.push_back({code, std::move(msg)}); };

    if (inst.n_members < 1) add("dim", "n_members must be >= 1");
    if (inst.n_defences < 1) add("dim", "n_defences must be >= 1");
    if (inst.n_roles < 1) add("dim", "n_roles must be >= 1");
    if (inst.n_days < 1) add("dim", "n_days must be >= 1");
    if (inst.n_slots < 1) add("dim", "n_slots must be >= 1");
    if (inst.n_rooms < 1) add("dim", "n_rooms must be >= 1");
    if (inst.n_subjects < 1) add("dim", "n_subjects must be >= 1");
    if (inst.duration < 1 || inst.duration > inst.n_slots)
        add("duration", "duration must lie in [1, n_slots]");
    if (!out.empty()) return out;  // dimension errors make shape checks meaningless

    if (static_cast<int>(inst.members.size()) != inst.n_members)
        add("shape", "members list size differs from n_members");
    if (static_cast<int>(inst.defences.size()) != inst.n_defences)
        add("shape", "defences list size differs from n_defences");
    if (!out.empty()) return out;

    for (int i = 1; i <= inst.n_members; ++i) {
        const auto& m = inst.members[static_cast<std::size_t>(i - 1)];
        std::ostringstream who;
        who << "member " << i << ": ";
        if (m.weight < 1) add("member_weight", who.str() + "weight must be >= 1");
        if (m.max_committees < 0) add("member_cap", who.str() + "max_committees must be >= 0");
        if (m.compact_window < 0 || m.compact_window > inst.duration - 1)
            add("member_window", who.str() + "compact_window must lie in [0, duration-1]");
        else if (static_cast<int>(m.compact_weights.size()) != m.compact_window + 1)
            add("member_profile", who.str() + "compact_weights length must be compact_window+1");
        if (m.roomchange_window < 0 || m.roomchange_window > inst.duration - 1)
            add("member_window", who.str() + "roomchange_window must lie in [0, duration-1]");
        else if (static_cast<int>(m.roomchange_penalties.size()) != m.roomchange_window + 1)
            add("member_profile", who.str() + "roomchange_penalties length must be roomchange_window+1");
        for (auto v : m.compact_weights)
            if (v < 0) add("member_profile", who.str() + "compact_weights must be >= 0");
        for (auto h : m.roomchange_penalties)
            if (h < 0) add("member_profile", who.str() + "roomchange_penalties must be >= 0");
        if (static_cast<int>(m.subjects.size()) != inst.n_subjects)
            add("member_subjects", who.str() + "subjects vector length must be n_subjects");
        for (auto s : m.subjects)
            if (s > 1) add("member_subjects", who.str() + "subject flags must be 0/1");
        if (static_cast<int>(m.availability.size()) != inst.n_days) {
            add("member_availability", who.str() + "availability must have n_days rows");
            continue;
        }
        for (int k = 1; k <= inst.n_days; ++k) {
            const auto& row = m.availability[static_cast<std::size_t>(k - 1)];
            if (static_cast<int>(row.size()) != inst.n_slots) {
                add("member_availability", who.str() + "availability rows must have n_slots entries");
                break;
            }
            for (int lv : row)
                if (lv < 0) {
                    add("member_availability", who.str() + "availability levels must be >= 0");
                    break;
                }
        }
    }

    for (int j = 1; j <= inst.n_defences; ++j) {
        const auto& dfc = inst.defences[static_cast<std::size_t>(j - 1)];
        std::ostringstream who;
        who << "defence " << j << ": ";
        if (static_cast<int>(dfc.subjects.size()) != inst.n_subjects)
            add("defence_subjects", who.str() + "subjects vector length must be n_subjects");
        for (auto s : dfc.subjects)
            if (s > 1) add("defence_subjects", who.str() + "subject flags must be 0/1");
        if (static_cast<int>(dfc.eligibility.size()) != inst.n_roles) {
            add("defence_eligibility", who.str() + "eligibility must have n_roles rows");
            continue;
        }
        for (const auto& row : dfc.eligibility) {
            if (static_cast<int>(row.size()) != inst.n_members) {
                add("defence_eligibility", who.str() + "eligibility rows must have n_members entries");
                break;
            }
            for (auto e : row)
                if (e > 1) {
                    add("defence_eligibility", who.str() + "eligibility flags must be 0/1");
                    break;
                }
        }
    }

    if (static_cast<int>(inst.room_availability.size()) != inst.n_days) {
        add("room_availability", "room availability must have n_days entries");
    } else {
        for (const auto& day : inst.room_availability) {
            if (static_cast<int>(day.size()) != inst.n_slots) {
                add("room_availability", "room availability days must have n_slots entries");
                break;
            }
            for (const auto& slot : day) {
                if (static_cast<int>(slot.size()) != inst.n_rooms) {
                    add("room_availability", "room availability slots must have n_rooms entries");
                    break;
                }
                for (auto f : slot)
                    if (f > 1) {
                        add("room_availability", "room availability flags must be 0/1");
                        break;
                    }
            }
        }
    }

    return out;
}

std::vector<Violation> check_feasibility(const Instance& inst, const Schedule& sched) {
    std::vector<Violation> out;
    auto add = [&](const char* code, std::string msg) { out.push_back({code, std::move(msg)}); };

    const int d = inst.duration;

    // Bounds first; out-of-range assignments are excluded from the later checks.
    std::vector<Assignment> ok;
    ok.reserve(sched.assignments.size());
    for (const auto& a : sched.assignments) {
        const bool in_range = a.member >= 1 && a.member <= inst.n_members && a.defence >= 1 &&
                              a.defence <= inst.n_defences && a.role >= 1 && a.role <= inst.n_roles &&
                              a.day >= 1 && a.day <= inst.n_days && a.hour >= 1 &&
                              a.hour + d - 1 <= inst.n_slots && a.room >= 1 && a.room <= inst.n_rooms;
        if (!in_range) {
            add("index_bounds", "assignment " + fmt(a) + " has an index out of range");
            continue;
        }
        ok.push_back(a);
    }

    // Committees: every defence with any assignment must have all roles filled
    // exactly once, by distinct members, all at one (day, hour, room).
    std::map<int, std::vector<Assignment>> by_defence;
    for (const auto& a : ok) by_defence[a.defence].push_back(a);

    struct Event {
        int defence, day, hour, room;
    };
    std::vector<Event> events;

    for (auto& [j, group] : by_defence) {
        const auto& first = group.front();
        bool same_slot = true;
        for (const auto& a : group)
            if (a.day != first.day || a.hour != first.hour || a.room != first.room) same_slot = false;
        if (!same_slot) {
            add("committee_split",
                "defence " + std::to_string(j) + " has assignments at different slots or rooms");
        } else {
            events.push_back({j, first.day, first.hour, first.room});
        }

        std::vector<int> role_count(static_cast<std::size_t>(inst.n_roles) + 1, 0);
        std::vector<int> member_count(static_cast<std::size_t>(inst.n_members) + 1, 0);
        for (const auto& a : group) {
            ++role_count[static_cast<std::size_t>(a.role)];
            ++member_count[static_cast<std::size_t>(a.member)];
        }
        for (int t = 1; t <= inst.n_roles; ++t) {
            if (role_count[static_cast<std::size_t>(t)] == 0)
                add("committee_incomplete",
                    "defence " + std::to_string(j) + " is missing role " + std::to_string(t));
            else if (role_count[static_cast<std::size_t>(t)] > 1)
                add("role_duplicated",
                    "defence " + std::to_string(j) + " fills role " + std::to_string(t) + " more than once");
        }
        for (int i = 1; i <= inst.n_members; ++i)
            if (member_count[static_cast<std::size_t>(i)] > 1)
                add("member_duplicated",
                    "member " + std::to_string(i) + " appears more than once in defence " + std::to_string(j));
    }

    if (static_cast<int>(by_defence.size()) != sched.num_scheduled)
        add("scheduled_count", "schedule claims " + std::to_string(sched.num_scheduled) +
                                   " scheduled defences but " + std::to_string(by_defence.size()) +
                                   " have assignments");

    // Per-assignment requirements.
    for (const auto& a : ok) {
        const auto& dfc = inst.defences[static_cast<std::size_t>(a.defence - 1)];
        if (dfc.eligibility[static_cast<std::size_t>(a.role - 1)][static_cast<std::size_t>(a.member - 1)] == 0)
            add("not_eligible", "assignment " + fmt(a) + ": member not eligible for role");
        if (!inst.member_window_free(a.member, a.day, a.hour))
            add("member_unavailable", "assignment " + fmt(a) + ": member unavailable during the slot window");
        if (!inst.room_window_free(a.room, a.day, a.hour))
            add("room_unavailable", "assignment " + fmt(a) + ": room unavailable during the slot window");
    }

    // Per-member committee cap.
    std::vector<int> load(static_cast<std::size_t>(inst.n_members) + 1, 0);
    for (const auto& a : ok) ++load[static_cast<std::size_t>(a.member)];
    for (int i = 1; i <= inst.n_members; ++i)
        if (load[static_cast<std::size_t>(i)] > inst.members[static_cast<std::size_t>(i - 1)].max_committees)
            add("member_cap_exceeded",
                "member " + std::to_string(i) + " serves on " + std::to_string(load[static_cast<std::size_t>(i)]) +
                    " committees, cap is " +
                    std::to_string(inst.members[static_cast<std::size_t>(i - 1)].max_committees));

    // No member may sit in two defences whose slot windows overlap.
    for (std::size_t x = 0; x < ok.size(); ++x)
        for (std::size_t y = x + 1; y < ok.size(); ++y) {
            const auto& a = ok[x];
            const auto& b = ok[y];
            if (a.member != b.member || a.day != b.day) continue;
            if (a.defence == b.defence) continue;  // same event, same slot: handled above
            if (std::abs(a.hour - b.hour) < d)
                add("member_overlap", "member " + std::to_string(a.member) + " is double-booked on day " +
                                          std::to_string(a.day) + " (defences " + std::to_string(a.defence) +
                                          " and " + std::to_string(b.defence) + ")");
        }

    // No two defences may overlap in the same room.
    for (std::size_t x = 0; x < events.size(); ++x)
        for (std::size_t y = x + 1; y < events.size(); ++y) {
            const auto& a = events[x];
            const auto& b = events[y];
            if (a.day != b.day || a.room != b.room) continue;
            if (std::abs(a.hour - b.hour) < d)
                add("room_overlap", "defences " + std::to_string(a.defence) + " and " +
                                        std::to_string(b.defence) + " overlap in room " +
                                        std::to_string(a.room) + " on day " + std::to_string(a.day));
        }

    return out;
}

}  // namespace defsched
