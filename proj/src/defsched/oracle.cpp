#include "defsched/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>

#include "defsched/objectives.hpp"

namespace defsched {

namespace {

// One concrete way to hold a defence: a slot window plus a full committee.
struct Placement {
    int day = 0;
    int hour = 0;
    int room = 0;
    std::vector<int> committee;  // member per role, 1-based, index = role - 1
};

// Exhaustive enumeration over schedules, shared by the stage-1 and Pareto
// oracles. Keeps incremental occupancy bitmasks so each extension is O(roles).
class Enumerator {
  public:
    Enumerator(const Instance& inst, const EnumerationBudget& budget)
        : inst_(inst),
          budget_(budget),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget.max_seconds))),
          room_busy_(static_cast<std::size_t>(inst.n_rooms),
                     std::vector<std::uint64_t>(static_cast<std::size_t>(inst.n_days), 0)),
          member_busy_(static_cast<std::size_t>(inst.n_members),
                       std::vector<std::uint64_t>(static_cast<std::size_t>(inst.n_days), 0)),
          member_load_(static_cast<std::size_t>(inst.n_members), 0) {
        if (inst.n_slots > 60)
            throw std::invalid_argument("oracle: instances with more than 60 slots per day are out of scope");
        build_placements();
    }

    // Largest reachable schedule size.
    int max_count() {
        best_ = 0;
        target_ = -1;
        dfs(0, 0);
        return best_;
    }

    // Canonical vectors of every schedule with exactly `target` defences.
    std::vector<std::vector<std::int64_t>> all_vectors(int target) {
        best_ = 0;
        target_ = target;
        vectors_.clear();
        dfs(0, 0);
        return {vectors_.begin(), vectors_.end()};
    }

    // The schedules themselves, one per leaf.
    std::vector<Schedule> all_schedules(int target) {
        best_ = 0;
        target_ = target;
        collect_schedules_ = true;
        schedules_.clear();
        dfs(0, 0);
        collect_schedules_ = false;
        return std::move(schedules_);
    }

  private:
    void build_placements() {
        const int d = inst_.duration;
        placements_.resize(static_cast<std::size_t>(inst_.n_defences));
        for (int j = 1; j <= inst_.n_defences; ++j) {
            const auto& def = inst_.defences[static_cast<std::size_t>(j - 1)];
            for (int k = 1; k <= inst_.n_days; ++k)
                for (int l = 1; l + d - 1 <= inst_.n_slots; ++l) {
                    // Members who can serve each role in this window.
                    std::vector<std::vector<int>> role_pool(static_cast<std::size_t>(inst_.n_roles));
                    bool viable = true;
                    for (int t = 1; t <= inst_.n_roles && viable; ++t) {
                        for (int i = 1; i <= inst_.n_members; ++i)
                            if (def.eligibility[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(i - 1)] &&
                                inst_.member_window_free(i, k, l))
                                role_pool[static_cast<std::size_t>(t - 1)].push_back(i);
                        viable = !role_pool[static_cast<std::size_t>(t - 1)].empty();
                    }
                    if (!viable) continue;
                    for (int p = 1; p <= inst_.n_rooms; ++p) {
                        if (!inst_.room_window_free(p, k, l)) continue;
                        Placement base;
                        base.day = k;
                        base.hour = l;
                        base.room = p;
                        expand_committees(j, role_pool, 0, base);
                    }
                }
        }
        // Fail-fast ordering: defences with the fewest ways to be held first.
        order_.resize(static_cast<std::size_t>(inst_.n_defences));
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            const auto na = placements_[static_cast<std::size_t>(a)].size();
            const auto nb = placements_[static_cast<std::size_t>(b)].size();
            return na != nb ? na < nb : a < b;
        });
    }

    void expand_committees(int j, const std::vector<std::vector<int>>& role_pool, int role0,
                           Placement& partial) {
        if (role0 == inst_.n_roles) {
            placements_[static_cast<std::size_t>(j - 1)].push_back(partial);
            return;
        }
        for (int i : role_pool[static_cast<std::size_t>(role0)]) {
            // One role per member within a single committee.
            if (std::find(partial.committee.begin(), partial.committee.end(), i) !=
                partial.committee.end())
                continue;
            partial.committee.push_back(i);
            expand_committees(j, role_pool, role0 + 1, partial);
            partial.committee.pop_back();
        }
    }

    void check_budget() {
        if (++nodes_ > budget_.max_nodes)
            throw BudgetExhausted("oracle: node budget exhausted", best_);
        if ((nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_)
            throw BudgetExhausted("oracle: time budget exhausted", best_);
    }

    bool fits(const Placement& pl, std::uint64_t mask) const {
        if (room_busy_[static_cast<std::size_t>(pl.room - 1)][static_cast<std::size_t>(pl.day - 1)] & mask)
            return false;
        for (int i : pl.committee) {
            if (member_busy_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(pl.day - 1)] & mask)
                return false;
            if (member_load_[static_cast<std::size_t>(i - 1)] >=
                inst_.members[static_cast<std::size_t>(i - 1)].max_committees)
                return false;
        }
        return true;
    }

    void apply(int j, const Placement& pl, std::uint64_t mask) {
        room_busy_[static_cast<std::size_t>(pl.room - 1)][static_cast<std::size_t>(pl.day - 1)] |= mask;
        for (int t = 1; t <= inst_.n_roles; ++t) {
            const int i = pl.committee[static_cast<std::size_t>(t - 1)];
            member_busy_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(pl.day - 1)] |= mask;
            ++member_load_[static_cast<std::size_t>(i - 1)];
            stack_.push_back({i, j, t, pl.day, pl.hour, pl.room});
        }
    }

    void undo(const Placement& pl, std::uint64_t mask) {
        room_busy_[static_cast<std::size_t>(pl.room - 1)][static_cast<std::size_t>(pl.day - 1)] &= ~mask;
        for (int i : pl.committee) {
            member_busy_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(pl.day - 1)] &= ~mask;
            --member_load_[static_cast<std::size_t>(i - 1)];
        }
        stack_.resize(stack_.size() - static_cast<std::size_t>(inst_.n_roles));
    }

    void dfs(std::size_t pos, int count) {
        check_budget();
        const int remaining = inst_.n_defences - static_cast<int>(pos);
        if (target_ < 0) {
            best_ = std::max(best_, count);
            if (count + remaining <= best_) return;  // cannot improve
        } else {
            if (count > target_ || count + remaining < target_) return;  // cannot land on target
        }
        if (pos == order_.size()) {
            if (target_ >= 0 && count == target_) record();
            return;
        }
        const int j = order_[pos] + 1;
        for (const auto& pl : placements_[static_cast<std::size_t>(j - 1)]) {
            const std::uint64_t mask = ((std::uint64_t{1} << inst_.duration) - 1)
                                       << (pl.hour - 1);
            if (!fits(pl, mask)) continue;
            apply(j, pl, mask);
            dfs(pos + 1, count + 1);
            undo(pl, mask);
        }
        dfs(pos + 1, count);  // leave this defence unscheduled
    }

    void record() {
        Schedule s;
        s.assignments = stack_;
        s.num_scheduled = target_;
        if (collect_schedules_) {
            schedules_.push_back(std::move(s));
            if (static_cast<std::int64_t>(schedules_.size()) > budget_.max_nodes)
                throw BudgetExhausted("oracle: too many schedules", best_);
            return;
        }
        vectors_.insert(canonicalize(evaluate_objectives(inst_, s)));
        if (static_cast<std::int64_t>(vectors_.size()) > budget_.max_nodes)
            throw BudgetExhausted("oracle: too many distinct objective vectors", best_);
    }

    const Instance& inst_;
    EnumerationBudget budget_;
    std::chrono::steady_clock::time_point deadline_;
    std::vector<std::vector<Placement>> placements_;  // per defence (0-based)
    std::vector<int> order_;                          // defence visit order (0-based ids)
    std::vector<std::vector<std::uint64_t>> room_busy_;
    std::vector<std::vector<std::uint64_t>> member_busy_;
    std::vector<int> member_load_;
    std::vector<Assignment> stack_;
    std::set<std::vector<std::int64_t>> vectors_;
    std::vector<Schedule> schedules_;
    bool collect_schedules_ = false;
    std::int64_t nodes_ = 0;
    int best_ = 0;
    int target_ = -1;
};

}  // namespace

int brute_force_g(const Instance& inst, const EnumerationBudget& budget) {
    return Enumerator(inst, budget).max_count();
}

std::vector<std::vector<std::int64_t>> brute_force_vectors(const Instance& inst, int g,
                                                           const EnumerationBudget& budget) {
    return Enumerator(inst, budget).all_vectors(g);
}

std::vector<std::vector<std::int64_t>> brute_force_pareto(const Instance& inst, int g,
                                                          const EnumerationBudget& budget) {
    const auto all = brute_force_vectors(inst, g, budget);
    std::vector<std::vector<std::int64_t>> front;
    for (auto idx : pareto_filter(all)) front.push_back(all[idx]);
    return front;
}

std::vector<Schedule> brute_force_schedules(const Instance& inst, int g,
                                            const EnumerationBudget& budget) {
    return Enumerator(inst, budget).all_schedules(g);
}

VerifyReport verify_solution(const Instance& inst, const Schedule& sched,
                             const ObjectiveVector& claimed) {
    VerifyReport report;
    report.violations = check_feasibility(inst, sched);
    if (report.violations.empty()) {
        const ObjectiveVector actual = evaluate_objectives(inst, sched);
        for (int i = 0; i < kNumObjectives; ++i) {
            const auto a = actual.z[static_cast<std::size_t>(i)];
            const auto c = claimed.z[static_cast<std::size_t>(i)];
            if (a != c) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "z%d: claimed %lld, recomputed %lld", i + 1,
                              static_cast<long long>(c), static_cast<long long>(a));
                report.value_mismatches.emplace_back(buf);
            }
        }
    }
    report.ok = report.violations.empty() && report.value_mismatches.empty();
    return report;
}

}  // namespace defsched
