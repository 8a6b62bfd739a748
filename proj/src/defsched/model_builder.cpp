#include "defsched/model_builder.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

#include "defsched/validate.hpp"

namespace defsched {

namespace {

std::string name(const char* fmt, int a, int b = -1, int c = -1, int d = -1, int e = -1, int f = -1) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, a, b, c, d, e, f);
    return buf;
}

}  // namespace

int VarIndex::x_at(int i, int j, int t, int k, int l, int p) const {
    const std::size_t at =
        ((((static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_j) + static_cast<std::size_t>(j - 1)) *
               static_cast<std::size_t>(n_t) +
           static_cast<std::size_t>(t - 1)) *
              static_cast<std::size_t>(n_k) +
          static_cast<std::size_t>(k - 1)) *
             static_cast<std::size_t>(n_l) +
         static_cast<std::size_t>(l - 1)) *
            static_cast<std::size_t>(n_p) +
        static_cast<std::size_t>(p - 1);
    return x[at];
}

int VarIndex::y_at(int j, int k, int l, int p) const {
    const std::size_t at = ((static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(n_k) +
                             static_cast<std::size_t>(k - 1)) *
                                static_cast<std::size_t>(n_l) +
                            static_cast<std::size_t>(l - 1)) *
                               static_cast<std::size_t>(n_p) +
                           static_cast<std::size_t>(p - 1);
    return y[at];
}

int VarIndex::ybar_at(int i, int k, int l, int p) const {
    const std::size_t at = ((static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_k) +
                             static_cast<std::size_t>(k - 1)) *
                                static_cast<std::size_t>(n_l) +
                            static_cast<std::size_t>(l - 1)) *
                               static_cast<std::size_t>(n_p) +
                           static_cast<std::size_t>(p - 1);
    return ybar.empty() ? -1 : ybar[at];
}

int VarIndex::w_at(int i, int count) const {
    if (count < 0 || count > w_max) return -1;
    return w[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(w_max + 1) +
             static_cast<std::size_t>(count)];
}

int VarIndex::yhat_at(int i, int count, int k) const {
    if (count < 0 || count > yhat_max) return -1;
    return yhat[(static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(yhat_max + 1) +
                 static_cast<std::size_t>(count)) *
                    static_cast<std::size_t>(n_k) +
                static_cast<std::size_t>(k - 1)];
}

int VarIndex::wbar_at(int i, int count) const {
    if (count < 0 || count > wbar_max) return -1;
    return wbar[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(wbar_max + 1) +
                static_cast<std::size_t>(count)];
}

int VarIndex::cov_at(int count, int j, int q) const {
    if (count < 0 || count > cov_max) return -1;
    return s_cov[(static_cast<std::size_t>(count) * static_cast<std::size_t>(n_j) +
                  static_cast<std::size_t>(j - 1)) *
                     static_cast<std::size_t>(n_q) +
                 static_cast<std::size_t>(q - 1)];
}

int VarIndex::sbar_at(int i, int k, int l) const {
    const std::size_t at = (static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_k) +
                            static_cast<std::size_t>(k - 1)) *
                               static_cast<std::size_t>(n_l) +
                           static_cast<std::size_t>(l - 1);
    return sbar.empty() ? -1 : sbar[at];
}

int VarIndex::shat_at(int i, int k, int l, int p) const {
    const std::size_t at = ((static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_k) +
                             static_cast<std::size_t>(k - 1)) *
                                static_cast<std::size_t>(n_l) +
                            static_cast<std::size_t>(l - 1)) *
                               static_cast<std::size_t>(n_p) +
                           static_cast<std::size_t>(p - 1);
    return shat.empty() ? -1 : shat[at];
}

BuiltModel build_base_model(const Instance& inst, const BuildOptions& opts) {
    if (auto problems = validate_instance(inst); !problems.empty())
        throw std::invalid_argument("build_base_model: invalid instance: " + problems.front().message);

    BuiltModel m;
    m.instance = &inst;
    auto& idx = m.idx;
    idx.n_i = inst.n_members;
    idx.n_j = inst.n_defences;
    idx.n_t = inst.n_roles;
    idx.n_k = inst.n_days;
    idx.n_l = inst.n_slots;
    idx.n_p = inst.n_rooms;
    idx.n_q = inst.n_subjects;
    const int d = inst.duration;

    idx.y.assign(static_cast<std::size_t>(idx.n_j) * static_cast<std::size_t>(idx.n_k) *
                     static_cast<std::size_t>(idx.n_l) * static_cast<std::size_t>(idx.n_p),
                 -1);
    idx.x.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.n_j) *
                     static_cast<std::size_t>(idx.n_t) * static_cast<std::size_t>(idx.n_k) *
                     static_cast<std::size_t>(idx.n_l) * static_cast<std::size_t>(idx.n_p),
                 -1);

    auto elig = [&](int i, int j, int t) {
        return inst.defences[static_cast<std::size_t>(j - 1)]
                   .eligibility[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(i - 1)] != 0;
    };

    // Event variables. A slot is a candidate only if the room is free for the
    // whole window and every role has at least one eligible free member.
    for (int j = 1; j <= idx.n_j; ++j)
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l + d - 1 <= idx.n_l; ++l)
                for (int p = 1; p <= idx.n_p; ++p) {
                    const bool room_ok = inst.room_window_free(p, k, l);
                    bool roles_ok = true;
                    for (int t = 1; t <= idx.n_t && roles_ok; ++t) {
                        bool any = false;
                        for (int i = 1; i <= idx.n_i && !any; ++i)
                            any = elig(i, j, t) && inst.member_window_free(i, k, l);
                        roles_ok = any;
                    }
                    if (opts.sparsify && !(room_ok && roles_ok)) continue;
                    const double ub = (!opts.sparsify && !room_ok) ? 0.0 : 1.0;
                    idx.y[static_cast<std::size_t>(
                        ((static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(idx.n_k) +
                          static_cast<std::size_t>(k - 1)) *
                             static_cast<std::size_t>(idx.n_l) +
                         static_cast<std::size_t>(l - 1)) *
                            static_cast<std::size_t>(idx.n_p) +
                        static_cast<std::size_t>(p - 1))] =
                        m.milp.add_var(name("y_%d_%d_%d_%d", j, k, l, p), VarKind::Binary, 0.0, ub);
                }

    // Assignment variables, only where the event variable exists.
    for (int i = 1; i <= idx.n_i; ++i)
        for (int j = 1; j <= idx.n_j; ++j)
            for (int t = 1; t <= idx.n_t; ++t)
                for (int k = 1; k <= idx.n_k; ++k)
                    for (int l = 1; l + d - 1 <= idx.n_l; ++l)
                        for (int p = 1; p <= idx.n_p; ++p) {
                            if (idx.y_at(j, k, l, p) < 0) continue;
                            const bool ok = elig(i, j, t) && inst.member_window_free(i, k, l);
                            if (opts.sparsify && !ok) continue;
                            const std::size_t at =
                                ((((static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.n_j) +
                                    static_cast<std::size_t>(j - 1)) *
                                       static_cast<std::size_t>(idx.n_t) +
                                   static_cast<std::size_t>(t - 1)) *
                                      static_cast<std::size_t>(idx.n_k) +
                                  static_cast<std::size_t>(k - 1)) *
                                     static_cast<std::size_t>(idx.n_l) +
                                 static_cast<std::size_t>(l - 1)) *
                                    static_cast<std::size_t>(idx.n_p) +
                                static_cast<std::size_t>(p - 1);
                            idx.x[at] = m.milp.add_var(name("x_%d_%d_%d_%d_%d_%d", i, j, t, k, l, p),
                                                       VarKind::Binary, 0.0, ok ? 1.0 : 0.0);
                        }

    // Complete committees: every role of a held defence filled exactly once.
    for (int j = 1; j <= idx.n_j; ++j)
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l + d - 1 <= idx.n_l; ++l)
                for (int p = 1; p <= idx.n_p; ++p) {
                    const int yv = idx.y_at(j, k, l, p);
                    if (yv < 0) continue;
                    for (int t = 1; t <= idx.n_t; ++t) {
                        std::vector<LinTerm> terms;
                        for (int i = 1; i <= idx.n_i; ++i)
                            if (const int xv = idx.x_at(i, j, t, k, l, p); xv >= 0)
                                terms.push_back({xv, 1.0});
                        terms.push_back({yv, -1.0});
                        m.milp.add_constraint(name("committee_%d_%d_%d_%d_%d", j, t, k, l, p),
                                              std::move(terms), Rel::EQ, 0.0);
                    }
                }

    // Each defence is held at most once.
    for (int j = 1; j <= idx.n_j; ++j) {
        std::vector<LinTerm> terms;
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l <= idx.n_l; ++l)
                for (int p = 1; p <= idx.n_p; ++p)
                    if (const int yv = idx.y_at(j, k, l, p); yv >= 0) terms.push_back({yv, 1.0});
        if (!terms.empty())
            m.milp.add_constraint(name("one_slot_%d", j), std::move(terms), Rel::LE, 1.0);
    }

    // Committee-membership cap per member.
    for (int i = 1; i <= idx.n_i; ++i) {
        std::vector<LinTerm> terms;
        for (int j = 1; j <= idx.n_j; ++j)
            for (int t = 1; t <= idx.n_t; ++t)
                for (int k = 1; k <= idx.n_k; ++k)
                    for (int l = 1; l <= idx.n_l; ++l)
                        for (int p = 1; p <= idx.n_p; ++p)
                            if (const int xv = idx.x_at(i, j, t, k, l, p); xv >= 0)
                                terms.push_back({xv, 1.0});
        if (!terms.empty())
            m.milp.add_constraint(
                name("cap_%d", i), std::move(terms), Rel::LE,
                static_cast<double>(inst.members[static_cast<std::size_t>(i - 1)].max_committees));
    }

    // A member can sit in at most one defence whose window covers any given slot.
    for (int i = 1; i <= idx.n_i; ++i)
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l <= idx.n_l; ++l) {
                std::vector<LinTerm> terms;
                for (int lam = std::max(1, l - d + 1); lam <= l; ++lam)
                    for (int j = 1; j <= idx.n_j; ++j)
                        for (int t = 1; t <= idx.n_t; ++t)
                            for (int p = 1; p <= idx.n_p; ++p)
                                if (const int xv = idx.x_at(i, j, t, k, lam, p); xv >= 0)
                                    terms.push_back({xv, 1.0});
                if (terms.size() > 1)
                    m.milp.add_constraint(name("mclash_%d_%d_%d", i, k, l), std::move(terms), Rel::LE, 1.0);
            }

    // A room hosts at most one defence whose window covers any given slot.
    for (int k = 1; k <= idx.n_k; ++k)
        for (int l = 1; l <= idx.n_l; ++l)
            for (int p = 1; p <= idx.n_p; ++p) {
                std::vector<LinTerm> terms;
                for (int lam = std::max(1, l - d + 1); lam <= l; ++lam)
                    for (int j = 1; j <= idx.n_j; ++j)
                        if (const int yv = idx.y_at(j, k, lam, p); yv >= 0) terms.push_back({yv, 1.0});
                if (terms.size() > 1)
                    m.milp.add_constraint(name("rclash_%d_%d_%d", k, l, p), std::move(terms), Rel::LE, 1.0);
            }

    m.base_var_count = static_cast<int>(m.milp.vars.size());
    return m;
}

void set_g(BuiltModel& model, int g) {
    if (g < 0 || g > model.idx.n_j) throw std::invalid_argument("set_g: g out of range");
    std::vector<LinTerm> terms;
    for (int yv : model.idx.y)
        if (yv >= 0) terms.push_back({yv, 1.0});
    if (model.g_row < 0)
        model.g_row = model.milp.add_constraint("defence_count", std::move(terms), Rel::EQ,
                                                static_cast<double>(g));
    else
        model.milp.replace_constraint(model.g_row, std::move(terms), Rel::EQ, static_cast<double>(g));
}

namespace {

// All assignment columns of member i for defence j (its committee membership).
std::vector<LinTerm> membership_terms(const VarIndex& idx, int i, int j) {
    std::vector<LinTerm> terms;
    for (int t = 1; t <= idx.n_t; ++t)
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l <= idx.n_l; ++l)
                for (int p = 1; p <= idx.n_p; ++p)
                    if (const int xv = idx.x_at(i, j, t, k, l, p); xv >= 0) terms.push_back({xv, 1.0});
    return terms;
}

}  // namespace

void add_objective_linearizations(BuiltModel& model) {
    if (model.linearized) return;
    const Instance& inst = *model.instance;
    auto& idx = model.idx;
    auto& milp = model.milp;
    const int d = inst.duration;

    // Member activity: ybar(i,k,l,p) = 1 iff member i starts an assignment there.
    idx.ybar.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.n_k) *
                        static_cast<std::size_t>(idx.n_l) * static_cast<std::size_t>(idx.n_p),
                    -1);
    for (int i = 1; i <= idx.n_i; ++i)
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l <= idx.n_l; ++l)
                for (int p = 1; p <= idx.n_p; ++p) {
                    std::vector<LinTerm> terms;
                    for (int j = 1; j <= idx.n_j; ++j)
                        for (int t = 1; t <= idx.n_t; ++t)
                            if (const int xv = idx.x_at(i, j, t, k, l, p); xv >= 0)
                                terms.push_back({xv, 1.0});
                    if (terms.empty()) continue;
                    const int av = milp.add_var(name("yb_%d_%d_%d_%d", i, k, l, p), VarKind::Binary, 0.0, 1.0);
                    idx.ybar[((static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.n_k) +
                               static_cast<std::size_t>(k - 1)) *
                                  static_cast<std::size_t>(idx.n_l) +
                              static_cast<std::size_t>(l - 1)) *
                                 static_cast<std::size_t>(idx.n_p) +
                             static_cast<std::size_t>(p - 1)] = av;
                    terms.push_back({av, -1.0});
                    milp.add_constraint(name("act_%d_%d_%d_%d", i, k, l, p), std::move(terms), Rel::EQ, 0.0);
                }

    // Workload selector: one-hot over the number of committees a member serves.
    idx.w_max = 0;
    for (const auto& mm : inst.members) idx.w_max = std::max(idx.w_max, mm.max_committees);
    idx.w.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.w_max + 1), -1);
    for (int i = 1; i <= idx.n_i; ++i) {
        const int cap = inst.members[static_cast<std::size_t>(i - 1)].max_committees;
        std::vector<LinTerm> sel, def;
        for (int n = 0; n <= cap; ++n) {
            const int wv = milp.add_var(name("w_%d_%d", i, n), VarKind::Binary, 0.0, 1.0);
            idx.w[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.w_max + 1) +
                  static_cast<std::size_t>(n)] = wv;
            sel.push_back({wv, 1.0});
            if (n > 0) def.push_back({wv, static_cast<double>(n)});
        }
        for (int j = 1; j <= idx.n_j; ++j)
            for (const auto& t : membership_terms(idx, i, j)) def.push_back({t.var, -1.0});
        milp.add_constraint(name("wsel_%d", i), std::move(sel), Rel::EQ, 1.0);
        milp.add_constraint(name("wdef_%d", i), std::move(def), Rel::EQ, 0.0);
    }

    // Per-day assignment count selector and active-day selector.
    idx.yhat_max = 0;
    for (const auto& mm : inst.members)
        idx.yhat_max = std::max(idx.yhat_max, std::min(mm.max_committees, idx.n_l / d));
    idx.yhat.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.yhat_max + 1) *
                        static_cast<std::size_t>(idx.n_k),
                    -1);
    idx.wbar_max = 0;
    for (const auto& mm : inst.members)
        idx.wbar_max = std::max(idx.wbar_max, std::min(idx.n_k, mm.max_committees));
    idx.wbar.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.wbar_max + 1), -1);

    for (int i = 1; i <= idx.n_i; ++i) {
        const auto& mm = inst.members[static_cast<std::size_t>(i - 1)];
        const int day_cap = std::min(mm.max_committees, idx.n_l / d);
        for (int k = 1; k <= idx.n_k; ++k) {
            std::vector<LinTerm> sel, def;
            for (int n = 0; n <= day_cap; ++n) {
                const int hv = milp.add_var(name("yh_%d_%d_%d", i, n, k), VarKind::Binary, 0.0, 1.0);
                idx.yhat[(static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.yhat_max + 1) +
                          static_cast<std::size_t>(n)) *
                             static_cast<std::size_t>(idx.n_k) +
                         static_cast<std::size_t>(k - 1)] = hv;
                sel.push_back({hv, 1.0});
                if (n > 0) def.push_back({hv, static_cast<double>(n)});
            }
            for (int l = 1; l <= idx.n_l; ++l)
                for (int p = 1; p <= idx.n_p; ++p)
                    if (const int av = idx.ybar_at(i, k, l, p); av >= 0) def.push_back({av, -1.0});
            milp.add_constraint(name("dsel_%d_%d", i, k), std::move(sel), Rel::EQ, 1.0);
            milp.add_constraint(name("ddef_%d_%d", i, k), std::move(def), Rel::EQ, 0.0);
        }

        // Active days: sum over days of (1 - yhat(i,0,k)).
        const int day_max = std::min(idx.n_k, mm.max_committees);
        std::vector<LinTerm> sel, def;
        for (int n = 0; n <= day_max; ++n) {
            const int wv = milp.add_var(name("wb_%d_%d", i, n), VarKind::Binary, 0.0, 1.0);
            idx.wbar[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.wbar_max + 1) +
                     static_cast<std::size_t>(n)] = wv;
            sel.push_back({wv, 1.0});
            if (n > 0) def.push_back({wv, static_cast<double>(n)});
        }
        for (int k = 1; k <= idx.n_k; ++k) def.push_back({idx.yhat_at(i, 0, k), 1.0});
        milp.add_constraint(name("asel_%d", i), std::move(sel), Rel::EQ, 1.0);
        milp.add_constraint(name("adef_%d", i), std::move(def), Rel::EQ, static_cast<double>(idx.n_k));
    }

    // Subject coverage: one-hot over how many committee members bring subject q
    // to defence j, for every subject the defence requires.
    idx.cov_max = idx.n_t;
    idx.s_cov.assign(static_cast<std::size_t>(idx.cov_max + 1) * static_cast<std::size_t>(idx.n_j) *
                         static_cast<std::size_t>(idx.n_q),
                     -1);
    for (int j = 1; j <= idx.n_j; ++j) {
        const auto& dfc = inst.defences[static_cast<std::size_t>(j - 1)];
        for (int q = 1; q <= idx.n_q; ++q) {
            if (!dfc.subjects[static_cast<std::size_t>(q - 1)]) continue;
            std::vector<LinTerm> sel, def;
            for (int c = 0; c <= idx.cov_max; ++c) {
                const int cv = milp.add_var(name("cv_%d_%d_%d", c, j, q), VarKind::Binary, 0.0, 1.0);
                idx.s_cov[(static_cast<std::size_t>(c) * static_cast<std::size_t>(idx.n_j) +
                           static_cast<std::size_t>(j - 1)) *
                              static_cast<std::size_t>(idx.n_q) +
                          static_cast<std::size_t>(q - 1)] = cv;
                sel.push_back({cv, 1.0});
                if (c > 0) def.push_back({cv, static_cast<double>(c)});
            }
            for (int i = 1; i <= idx.n_i; ++i) {
                if (!inst.members[static_cast<std::size_t>(i - 1)].subjects[static_cast<std::size_t>(q - 1)])
                    continue;
                for (const auto& t : membership_terms(idx, i, j)) def.push_back({t.var, -1.0});
            }
            milp.add_constraint(name("csel_%d_%d", j, q), std::move(sel), Rel::EQ, 1.0);
            milp.add_constraint(name("cdef_%d_%d", j, q), std::move(def), Rel::EQ, 0.0);
        }
    }

    // Realized gap rewards (compactness) and room-change penalties. Both are
    // pinned exactly at every feasible point: zero when the member is idle at
    // (k,l), and equal to the weighted predecessor sum when active.
    idx.sbar.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.n_k) *
                        static_cast<std::size_t>(idx.n_l),
                    -1);
    idx.shat.assign(static_cast<std::size_t>(idx.n_i) * static_cast<std::size_t>(idx.n_k) *
                        static_cast<std::size_t>(idx.n_l) * static_cast<std::size_t>(idx.n_p),
                    -1);
    for (int i = 1; i <= idx.n_i; ++i) {
        const auto& mm = inst.members[static_cast<std::size_t>(i - 1)];
        const auto big_v = static_cast<double>(mm.max_compact_weight());
        const auto big_h = static_cast<double>(mm.max_roomchange_penalty());
        for (int k = 1; k <= idx.n_k; ++k)
            for (int l = 1; l <= idx.n_l; ++l) {
                std::vector<LinTerm> act;
                for (int p = 1; p <= idx.n_p; ++p)
                    if (const int av = idx.ybar_at(i, k, l, p); av >= 0) act.push_back({av, 1.0});
                if (act.empty()) continue;

                if (big_v > 0.0) {
                    std::vector<LinTerm> vsum;
                    for (int delta = 0; delta <= mm.compact_window; ++delta) {
                        const int lam = l - d - delta;
                        if (lam < 1) break;
                        const auto weight =
                            static_cast<double>(mm.compact_weights[static_cast<std::size_t>(delta)]);
                        if (weight == 0.0) continue;
                        for (int p = 1; p <= idx.n_p; ++p)
                            if (const int av = idx.ybar_at(i, k, lam, p); av >= 0)
                                vsum.push_back({av, weight});
                    }
                    if (!vsum.empty()) {
                        const int sv = milp.add_var(name("sb_%d_%d_%d", i, k, l), VarKind::Integer, 0.0, big_v);
                        idx.sbar[(static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.n_k) +
                                  static_cast<std::size_t>(k - 1)) *
                                     static_cast<std::size_t>(idx.n_l) +
                                 static_cast<std::size_t>(l - 1)] = sv;
                        std::vector<LinTerm> c1{{sv, 1.0}};
                        for (const auto& t : act) c1.push_back({t.var, -big_v});
                        milp.add_constraint(name("sbact_%d_%d_%d", i, k, l), std::move(c1), Rel::LE, 0.0);
                        std::vector<LinTerm> c2{{sv, 1.0}};
                        for (const auto& t : vsum) c2.push_back({t.var, -t.coef});
                        milp.add_constraint(name("sbcap_%d_%d_%d", i, k, l), std::move(c2), Rel::LE, 0.0);
                        std::vector<LinTerm> c3{{sv, 1.0}};
                        for (const auto& t : vsum) c3.push_back({t.var, -t.coef});
                        for (const auto& t : act) c3.push_back({t.var, -big_v});
                        milp.add_constraint(name("sbfloor_%d_%d_%d", i, k, l), std::move(c3), Rel::GE, -big_v);
                    }
                }

                if (big_h > 0.0) {
                    for (int p = 1; p <= idx.n_p; ++p) {
                        const int av = idx.ybar_at(i, k, l, p);
                        if (av < 0) continue;
                        std::vector<LinTerm> hsum;
                        for (int delta = 0; delta <= mm.roomchange_window; ++delta) {
                            const int lam = l - d - delta;
                            if (lam < 1) break;
                            const auto weight =
                                static_cast<double>(mm.roomchange_penalties[static_cast<std::size_t>(delta)]);
                            if (weight == 0.0) continue;
                            for (int pb = 1; pb <= idx.n_p; ++pb)
                                if (pb != p)
                                    if (const int bv = idx.ybar_at(i, k, lam, pb); bv >= 0)
                                        hsum.push_back({bv, weight});
                        }
                        if (hsum.empty()) continue;
                        const int sv =
                            milp.add_var(name("sh_%d_%d_%d_%d", i, k, l, p), VarKind::Integer, 0.0, big_h);
                        idx.shat[((static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(idx.n_k) +
                                   static_cast<std::size_t>(k - 1)) *
                                      static_cast<std::size_t>(idx.n_l) +
                                  static_cast<std::size_t>(l - 1)) *
                                     static_cast<std::size_t>(idx.n_p) +
                                 static_cast<std::size_t>(p - 1)] = sv;
                        milp.add_constraint(name("shact_%d_%d_%d_%d", i, k, l, p),
                                            {{sv, 1.0}, {av, -big_h}}, Rel::LE, 0.0);
                        std::vector<LinTerm> c2{{sv, 1.0}};
                        for (const auto& t : hsum) c2.push_back({t.var, -t.coef});
                        milp.add_constraint(name("shcap_%d_%d_%d_%d", i, k, l, p), std::move(c2), Rel::LE, 0.0);
                        std::vector<LinTerm> c3{{sv, 1.0}};
                        for (const auto& t : hsum) c3.push_back({t.var, -t.coef});
                        c3.push_back({av, -big_h});
                        milp.add_constraint(name("shfloor_%d_%d_%d_%d", i, k, l, p), std::move(c3), Rel::GE,
                                            -big_h);
                    }
                }
            }
    }

    model.linearized = true;
    model.linearized_var_count = static_cast<int>(model.milp.vars.size());
}

LinearExpr objective_expression(const BuiltModel& model, int id) {
    const Instance& inst = *model.instance;
    const auto& idx = model.idx;
    const bool needs_aux = id == 1 || id == 2 || id == 4 || id == 6 || id == 7;
    if (needs_aux && !model.linearized)
        throw std::logic_error("objective_expression: linearizations not added yet");

    LinearExpr e;
    switch (id) {
        case 1:
            for (int i = 1; i <= idx.n_i; ++i) {
                const auto u = static_cast<double>(inst.members[static_cast<std::size_t>(i - 1)].weight);
                for (int n = 1; n <= inst.members[static_cast<std::size_t>(i - 1)].max_committees; ++n)
                    e.add(idx.w_at(i, n), u * n * n);
            }
            break;
        case 2:
            for (int j = 1; j <= idx.n_j; ++j)
                for (int q = 1; q <= idx.n_q; ++q)
                    for (int c = 1; c <= idx.cov_max; ++c)
                        if (const int cv = idx.cov_at(c, j, q); cv >= 0) e.add(cv, 1.0);
            break;
        case 3:
            for (int i = 1; i <= idx.n_i; ++i) {
                const auto& mi = inst.members[static_cast<std::size_t>(i - 1)];
                for (int j = 1; j <= idx.n_j; ++j) {
                    const auto& dj = inst.defences[static_cast<std::size_t>(j - 1)];
                    double affinity = 0.0;
                    for (int q = 0; q < idx.n_q; ++q)
                        affinity += static_cast<double>(mi.subjects[static_cast<std::size_t>(q)]) *
                                    static_cast<double>(dj.subjects[static_cast<std::size_t>(q)]);
                    if (affinity == 0.0) continue;
                    for (const auto& t : membership_terms(idx, i, j)) e.add(t.var, affinity);
                }
            }
            break;
        case 4:
            for (int i = 1; i <= idx.n_i; ++i) {
                const auto& mi = inst.members[static_cast<std::size_t>(i - 1)];
                const auto u = static_cast<double>(mi.weight);
                const auto nv = static_cast<double>(mi.max_compact_weight());
                for (int n = 1; n <= mi.max_committees; ++n) e.add(idx.w_at(i, n), u * nv * (n - 1));
                for (int k = 1; k <= idx.n_k; ++k)
                    for (int l = 1; l <= idx.n_l; ++l)
                        if (const int sv = idx.sbar_at(i, k, l); sv >= 0) e.add(sv, -u);
            }
            break;
        case 5:
            for (int i = 1; i <= idx.n_i; ++i) {
                const auto& mi = inst.members[static_cast<std::size_t>(i - 1)];
                const auto u = static_cast<double>(mi.weight);
                for (int j = 1; j <= idx.n_j; ++j)
                    for (int t = 1; t <= idx.n_t; ++t)
                        for (int k = 1; k <= idx.n_k; ++k)
                            for (int l = 1; l <= idx.n_l; ++l)
                                for (int p = 1; p <= idx.n_p; ++p)
                                    if (const int xv = idx.x_at(i, j, t, k, l, p); xv >= 0) {
                                        const int level = mi.availability[static_cast<std::size_t>(k - 1)]
                                                                         [static_cast<std::size_t>(l - 1)];
                                        e.add(xv, u * (level - 1));
                                    }
            }
            break;
        case 6:
            for (int i = 1; i <= idx.n_i; ++i) {
                const auto& mi = inst.members[static_cast<std::size_t>(i - 1)];
                const auto u = static_cast<double>(mi.weight);
                for (int n = 1; n <= std::min(idx.n_k, mi.max_committees); ++n)
                    e.add(idx.wbar_at(i, n), u * n * n);
            }
            break;
        case 7:
            for (int i = 1; i <= idx.n_i; ++i) {
                const auto u = static_cast<double>(inst.members[static_cast<std::size_t>(i - 1)].weight);
                for (int k = 1; k <= idx.n_k; ++k)
                    for (int l = 1; l <= idx.n_l; ++l)
                        for (int p = 1; p <= idx.n_p; ++p)
                            if (const int sv = idx.shat_at(i, k, l, p); sv >= 0) e.add(sv, u);
            }
            break;
        default:
            throw std::invalid_argument("objective_expression: id must be 1..7");
    }
    return e;
}

LinearExpr canonical_objective_expression(const BuiltModel& model, int id) {
    LinearExpr e = objective_expression(model, id);
    if (kObjectiveIsMin[static_cast<std::size_t>(id - 1)]) {
        for (auto& t : e.terms) t.coef = -t.coef;
        e.constant = -e.constant;
    }
    return e;
}

LinearExpr stage1_objective(const BuiltModel& model) {
    LinearExpr e;
    for (int yv : model.idx.y)
        if (yv >= 0) e.add(yv, 1.0);
    return e;
}

Schedule decode_solution(const BuiltModel& model, const std::vector<double>& values) {
    if (values.size() < static_cast<std::size_t>(model.base_var_count))
        throw std::invalid_argument("decode_solution: value vector too short");
    const auto& idx = model.idx;
    Schedule s;
    for (int i = 1; i <= idx.n_i; ++i)
        for (int j = 1; j <= idx.n_j; ++j)
            for (int t = 1; t <= idx.n_t; ++t)
                for (int k = 1; k <= idx.n_k; ++k)
                    for (int l = 1; l <= idx.n_l; ++l)
                        for (int p = 1; p <= idx.n_p; ++p) {
                            const int xv = idx.x_at(i, j, t, k, l, p);
                            if (xv >= 0 && values[static_cast<std::size_t>(xv)] > 0.5)
                                s.assignments.push_back({i, j, t, k, l, p});
                        }
    int g = 0;
    for (int yv : idx.y)
        if (yv >= 0 && values[static_cast<std::size_t>(yv)] > 0.5) ++g;
    s.num_scheduled = g;
    return s;
}

std::vector<double> encode_schedule(const BuiltModel& model, const Schedule& sched) {
    const Instance& inst = *model.instance;
    if (!model.linearized)
        throw std::logic_error("encode_schedule: model must be linearized first");
    if (static_cast<int>(model.milp.vars.size()) != model.linearized_var_count)
        throw std::invalid_argument(
            "encode_schedule: model carries epsilon-stage columns; encode the base model");
    if (auto v = check_feasibility(inst, sched); !v.empty())
        throw std::invalid_argument("encode_schedule: infeasible schedule: " + v.front().message);

    const auto& idx = model.idx;
    const int d = inst.duration;
    std::vector<double> values(model.milp.vars.size(), 0.0);

    auto set1 = [&](int var, const char* what) {
        if (var < 0)
            throw std::invalid_argument(std::string("encode_schedule: required ") + what +
                                        " variable was not materialized");
        values[static_cast<std::size_t>(var)] = 1.0;
    };

    for (const auto& a : sched.assignments) {
        set1(idx.x_at(a.member, a.defence, a.role, a.day, a.hour, a.room), "assignment");
        set1(idx.y_at(a.defence, a.day, a.hour, a.room), "event");  // idempotent across roles
        set1(idx.ybar_at(a.member, a.day, a.hour, a.room), "activity");
    }

    // Selector one-hots from realized counts.
    for (int i = 1; i <= idx.n_i; ++i) {
        int workload = 0, active_days = 0;
        std::vector<int> per_day(static_cast<std::size_t>(idx.n_k) + 1, 0);
        for (const auto& a : sched.assignments)
            if (a.member == i) {
                ++workload;
                ++per_day[static_cast<std::size_t>(a.day)];
            }
        for (int k = 1; k <= idx.n_k; ++k) {
            if (per_day[static_cast<std::size_t>(k)] > 0) ++active_days;
            set1(idx.yhat_at(i, per_day[static_cast<std::size_t>(k)], k), "per-day selector");
        }
        set1(idx.w_at(i, workload), "workload selector");
        set1(idx.wbar_at(i, active_days), "active-day selector");
    }

    // Coverage one-hots from realized committee membership.
    for (int j = 1; j <= idx.n_j; ++j) {
        const auto& dfc = inst.defences[static_cast<std::size_t>(j - 1)];
        std::vector<int> committee;
        for (const auto& a : sched.assignments)
            if (a.defence == j) committee.push_back(a.member);
        for (int q = 1; q <= idx.n_q; ++q) {
            if (!dfc.subjects[static_cast<std::size_t>(q - 1)]) continue;
            int covering = 0;
            for (int i : committee)
                if (inst.members[static_cast<std::size_t>(i - 1)].subjects[static_cast<std::size_t>(q - 1)])
                    ++covering;
            set1(idx.cov_at(covering, j, q), "coverage selector");
        }
    }

    // Pinned gap values: weighted predecessor sums where the member is active.
    for (int i = 1; i <= idx.n_i; ++i) {
        const auto& mm = inst.members[static_cast<std::size_t>(i - 1)];
        std::vector<Assignment> mine;
        for (const auto& a : sched.assignments)
            if (a.member == i) mine.push_back(a);
        for (const auto& a : mine) {
            std::int64_t vsum = 0, hsum = 0;
            for (const auto& b : mine) {
                if (a.day != b.day || a.defence == b.defence) continue;
                const int delta = a.hour - b.hour - d;
                if (delta >= 0 && delta <= mm.compact_window)
                    vsum += mm.compact_weights[static_cast<std::size_t>(delta)];
                if (delta >= 0 && delta <= mm.roomchange_window && a.room != b.room)
                    hsum += mm.roomchange_penalties[static_cast<std::size_t>(delta)];
            }
            if (const int sv = idx.sbar_at(i, a.day, a.hour); sv >= 0)
                values[static_cast<std::size_t>(sv)] = static_cast<double>(vsum);
            else if (vsum != 0)
                throw std::logic_error("encode_schedule: realized compactness lacks its variable");
            if (const int sv = idx.shat_at(i, a.day, a.hour, a.room); sv >= 0)
                values[static_cast<std::size_t>(sv)] = static_cast<double>(hsum);
            else if (hsum != 0)
                throw std::logic_error("encode_schedule: realized room change lacks its variable");
        }
    }

    return values;
}

}  // namespace defsched
