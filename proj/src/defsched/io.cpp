#include "defsched/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <stdexcept>

#include "defsched/validate.hpp"

namespace defsched {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::runtime_error(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

int get_int(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer()) fail(where, std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

// Ascending 1-based id list -> 0/1 membership vector of length n.
std::vector<std::uint8_t> ids_to_flags(const json& arr, int n, const std::string& where) {
    if (!arr.is_array()) fail(where, "must be an array of ids");
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(n), 0);
    int prev = 0;
    for (const auto& e : arr) {
        if (!e.is_number_integer()) fail(where, "ids must be integers");
        const int id = e.get<int>();
        if (id < 1 || id > n) fail(where, "id " + std::to_string(id) + " out of range 1.." + std::to_string(n));
        if (id <= prev) fail(where, "ids must be strictly ascending");
        flags[static_cast<std::size_t>(id - 1)] = 1;
        prev = id;
    }
    return flags;
}

json flags_to_ids(const std::vector<std::uint8_t>& flags) {
    json arr = json::array();
    for (std::size_t q = 0; q < flags.size(); ++q)
        if (flags[q]) arr.push_back(static_cast<int>(q + 1));
    return arr;
}

template <typename T>
std::vector<T> get_number_vector(const json& arr, const std::string& where) {
    if (!arr.is_array()) fail(where, "must be an array");
    std::vector<T> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_number()) fail(where, "entries must be numbers");
        out.push_back(e.get<T>());
    }
    return out;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

std::string instance_digest(const json& doc) {
    json core;
    for (const char* key : {"format", "version", "meta", "members", "defences", "rooms"}) {
        auto it = doc.find(key);
        if (it != doc.end()) core[key] = *it;
    }
    return sha256_hex(core.dump());
}

json instance_to_json(const Instance& inst) {
    json doc;
    doc["format"] = kInstanceFormat;
    doc["version"] = kFormatVersion;
    doc["meta"] = {{"n_i", inst.n_members}, {"n_j", inst.n_defences}, {"n_t", inst.n_roles},
                   {"n_k", inst.n_days},    {"n_l", inst.n_slots},    {"n_p", inst.n_rooms},
                   {"n_q", inst.n_subjects}, {"d", inst.duration}};

    json members = json::array();
    for (std::size_t i = 0; i < inst.members.size(); ++i) {
        const Member& m = inst.members[i];
        json jm;
        jm["id"] = static_cast<int>(i + 1);
        jm["u"] = m.weight;
        jm["c"] = m.max_committees;
        jm["b"] = m.compact_window;
        jm["v"] = m.compact_weights;
        jm["a"] = m.roomchange_window;
        jm["h"] = m.roomchange_penalties;
        jm["subjects"] = flags_to_ids(m.subjects);
        jm["availability"] = m.availability;
        members.push_back(std::move(jm));
    }
    doc["members"] = std::move(members);

    json defences = json::array();
    for (std::size_t j = 0; j < inst.defences.size(); ++j) {
        const Defence& d = inst.defences[j];
        json jd;
        jd["id"] = static_cast<int>(j + 1);
        jd["subjects"] = flags_to_ids(d.subjects);
        json elig = json::array();
        for (const auto& role : d.eligibility) elig.push_back(flags_to_ids(role));
        jd["eligibility"] = std::move(elig);
        defences.push_back(std::move(jd));
    }
    doc["defences"] = std::move(defences);

    // Stored per room as [day][slot] so each room reads like a calendar.
    json rooms = json::array();
    for (int p = 0; p < inst.n_rooms; ++p) {
        json days = json::array();
        for (int k = 0; k < inst.n_days; ++k) {
            json slots = json::array();
            for (int l = 0; l < inst.n_slots; ++l)
                slots.push_back(static_cast<int>(
                    inst.room_availability[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]
                                          [static_cast<std::size_t>(p)]));
            days.push_back(std::move(slots));
        }
        rooms.push_back(std::move(days));
    }
    doc["rooms"] = {{"availability", std::move(rooms)}};
    return doc;
}

Instance instance_from_json(const json& doc) {
    const std::string where = "instance";
    if (!doc.is_object()) fail(where, "document must be an object");
    if (field(doc, "format", where) != kInstanceFormat) fail(where, "unknown format tag");
    if (field(doc, "version", where) != kFormatVersion) fail(where, "unsupported version");

    const json& meta = field(doc, "meta", where);
    Instance inst;
    inst.n_members = get_int(meta, "n_i", "meta");
    inst.n_defences = get_int(meta, "n_j", "meta");
    inst.n_roles = get_int(meta, "n_t", "meta");
    inst.n_days = get_int(meta, "n_k", "meta");
    inst.n_slots = get_int(meta, "n_l", "meta");
    inst.n_rooms = get_int(meta, "n_p", "meta");
    inst.n_subjects = get_int(meta, "n_q", "meta");
    inst.duration = get_int(meta, "d", "meta");

    const json& members = field(doc, "members", where);
    if (!members.is_array() || static_cast<int>(members.size()) != inst.n_members)
        fail(where, "members must be an array of n_i entries");
    for (int i = 0; i < inst.n_members; ++i) {
        const json& jm = members[static_cast<std::size_t>(i)];
        const std::string mw = "members[" + std::to_string(i) + "]";
        if (get_int(jm, "id", mw) != i + 1) fail(mw, "ids must run 1..n_i in order");
        Member m;
        m.weight = field(jm, "u", mw).get<std::int64_t>();
        m.max_committees = get_int(jm, "c", mw);
        m.compact_window = get_int(jm, "b", mw);
        m.compact_weights = get_number_vector<std::int64_t>(field(jm, "v", mw), mw + ".v");
        m.roomchange_window = get_int(jm, "a", mw);
        m.roomchange_penalties = get_number_vector<std::int64_t>(field(jm, "h", mw), mw + ".h");
        m.subjects = ids_to_flags(field(jm, "subjects", mw), inst.n_subjects, mw + ".subjects");
        const json& av = field(jm, "availability", mw);
        if (!av.is_array() || static_cast<int>(av.size()) != inst.n_days)
            fail(mw, "availability must have one row per day");
        for (const auto& day : av) {
            auto row = get_number_vector<int>(day, mw + ".availability");
            if (static_cast<int>(row.size()) != inst.n_slots)
                fail(mw, "availability rows must have n_l entries");
            m.availability.push_back(std::move(row));
        }
        inst.members.push_back(std::move(m));
    }

    const json& defences = field(doc, "defences", where);
    if (!defences.is_array() || static_cast<int>(defences.size()) != inst.n_defences)
        fail(where, "defences must be an array of n_j entries");
    for (int j = 0; j < inst.n_defences; ++j) {
        const json& jd = defences[static_cast<std::size_t>(j)];
        const std::string dw = "defences[" + std::to_string(j) + "]";
        if (get_int(jd, "id", dw) != j + 1) fail(dw, "ids must run 1..n_j in order");
        Defence d;
        d.subjects = ids_to_flags(field(jd, "subjects", dw), inst.n_subjects, dw + ".subjects");
        const json& elig = field(jd, "eligibility", dw);
        if (!elig.is_array() || static_cast<int>(elig.size()) != inst.n_roles)
            fail(dw, "eligibility must have one pool per role");
        for (const auto& pool : elig)
            d.eligibility.push_back(ids_to_flags(pool, inst.n_members, dw + ".eligibility"));
        inst.defences.push_back(std::move(d));
    }

    const json& rooms = field(field(doc, "rooms", where), "availability", "rooms");
    if (!rooms.is_array() || static_cast<int>(rooms.size()) != inst.n_rooms)
        fail(where, "rooms.availability must have one calendar per room");
    inst.room_availability.assign(
        static_cast<std::size_t>(inst.n_days),
        std::vector<std::vector<std::uint8_t>>(static_cast<std::size_t>(inst.n_slots),
                                               std::vector<std::uint8_t>(static_cast<std::size_t>(inst.n_rooms), 0)));
    for (int p = 0; p < inst.n_rooms; ++p) {
        const json& cal = rooms[static_cast<std::size_t>(p)];
        const std::string rw = "rooms.availability[" + std::to_string(p) + "]";
        if (!cal.is_array() || static_cast<int>(cal.size()) != inst.n_days)
            fail(rw, "must have one row per day");
        for (int k = 0; k < inst.n_days; ++k) {
            auto row = get_number_vector<int>(cal[static_cast<std::size_t>(k)], rw);
            if (static_cast<int>(row.size()) != inst.n_slots) fail(rw, "rows must have n_l entries");
            for (int l = 0; l < inst.n_slots; ++l) {
                if (row[static_cast<std::size_t>(l)] != 0 && row[static_cast<std::size_t>(l)] != 1)
                    fail(rw, "entries must be 0 or 1");
                inst.room_availability[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]
                                      [static_cast<std::size_t>(p)] =
                    static_cast<std::uint8_t>(row[static_cast<std::size_t>(l)]);
            }
        }
    }

    const auto problems = validate_instance(inst);
    if (!problems.empty()) {
        std::string msg = "instance fails validation:";
        for (const auto& v : problems) msg += " [" + v.code + "] " + v.message;
        throw std::runtime_error(msg);
    }
    return inst;
}

namespace {

ChainConfig chain_config_from_json(const json& j, const std::string& where) {
    ChainConfig c;
    if (j.is_null()) return c;
    if (!j.is_object()) fail(where, "must be an object");
    c.n_avail_states = j.value("n_avail_states", c.n_avail_states);
    if (j.contains("self_probs"))
        c.self_probs = get_number_vector<double>(j["self_probs"], where + ".self_probs");
    c.target_unavailable = j.value("target_unavailable", c.target_unavailable);
    c.warmup = j.value("warmup", c.warmup);
    return c;
}

json chain_config_to_json(const ChainConfig& c) {
    return {{"n_avail_states", c.n_avail_states},
            {"self_probs", c.self_probs},
            {"target_unavailable", c.target_unavailable},
            {"warmup", c.warmup}};
}

std::vector<ProfileChoice> profiles_from_json(const json& arr, const std::string& where) {
    if (!arr.is_array() || arr.empty()) fail(where, "must be a non-empty array");
    std::vector<ProfileChoice> out;
    for (const auto& e : arr) {
        ProfileChoice p;
        p.weights = get_number_vector<std::int64_t>(field(e, "weights", where), where + ".weights");
        p.prob = field(e, "prob", where).get<double>();
        out.push_back(std::move(p));
    }
    return out;
}

json profiles_to_json(const std::vector<ProfileChoice>& profiles) {
    json arr = json::array();
    for (const auto& p : profiles) arr.push_back({{"weights", p.weights}, {"prob", p.prob}});
    return arr;
}

}  // namespace

GeneratorConfig generator_config_from_json(const json& doc) {
    const std::string where = "generator config";
    if (!doc.is_object()) fail(where, "document must be an object");
    GeneratorConfig cfg;
    cfg.n_members = get_int(doc, "n_members", where);
    cfg.n_defences = get_int(doc, "n_defences", where);
    cfg.n_roles = get_int(doc, "n_roles", where);
    cfg.n_days = get_int(doc, "n_days", where);
    cfg.n_slots = get_int(doc, "n_slots", where);
    cfg.n_rooms = get_int(doc, "n_rooms", where);
    cfg.n_subjects = get_int(doc, "n_subjects", where);
    cfg.duration = get_int(doc, "duration", where);

    if (doc.contains("weight_values"))
        cfg.weight_values = get_number_vector<std::int64_t>(doc["weight_values"], "weight_values");
    if (doc.contains("weight_probs"))
        cfg.weight_probs = get_number_vector<double>(doc["weight_probs"], "weight_probs");
    cfg.committee_cap_fraction = doc.value("committee_cap_fraction", cfg.committee_cap_fraction);
    cfg.subjects_per_member = doc.value("subjects_per_member", cfg.subjects_per_member);
    cfg.subjects_per_defence = doc.value("subjects_per_defence", cfg.subjects_per_defence);

    cfg.roles.clear();
    if (doc.contains("roles")) {
        const json& roles = doc["roles"];
        if (!roles.is_array()) fail(where, "roles must be an array");
        for (const auto& r : roles) {
            RolePoolSpec spec;
            spec.pool_size = r.value("pool_size", 0);
            spec.fixed = r.value("fixed", false);
            cfg.roles.push_back(spec);
        }
    } else {
        cfg.roles.assign(static_cast<std::size_t>(cfg.n_roles), RolePoolSpec{});
    }

    if (doc.contains("compact_profiles"))
        cfg.compact_profiles = profiles_from_json(doc["compact_profiles"], "compact_profiles");
    if (doc.contains("roomchange_profiles"))
        cfg.roomchange_profiles = profiles_from_json(doc["roomchange_profiles"], "roomchange_profiles");

    cfg.member_chain = chain_config_from_json(doc.value("member_chain", json()), "member_chain");
    cfg.room_chain = chain_config_from_json(doc.value("room_chain", json()), "room_chain");
    return cfg;
}

json generator_config_to_json(const GeneratorConfig& cfg) {
    json roles = json::array();
    for (const auto& r : cfg.roles) roles.push_back({{"pool_size", r.pool_size}, {"fixed", r.fixed}});
    return {{"n_members", cfg.n_members},
            {"n_defences", cfg.n_defences},
            {"n_roles", cfg.n_roles},
            {"n_days", cfg.n_days},
            {"n_slots", cfg.n_slots},
            {"n_rooms", cfg.n_rooms},
            {"n_subjects", cfg.n_subjects},
            {"duration", cfg.duration},
            {"weight_values", cfg.weight_values},
            {"weight_probs", cfg.weight_probs},
            {"committee_cap_fraction", cfg.committee_cap_fraction},
            {"subjects_per_member", cfg.subjects_per_member},
            {"subjects_per_defence", cfg.subjects_per_defence},
            {"roles", std::move(roles)},
            {"compact_profiles", profiles_to_json(cfg.compact_profiles)},
            {"roomchange_profiles", profiles_to_json(cfg.roomchange_profiles)},
            {"member_chain", chain_config_to_json(cfg.member_chain)},
            {"room_chain", chain_config_to_json(cfg.room_chain)}};
}

RunConfig run_config_from_json(const json& doc) {
    const std::string where = "run config";
    if (!doc.is_object()) fail(where, "document must be an object");
    RunConfig cfg;
    cfg.primary = doc.value("primary", cfg.primary);
    if (doc.contains("bounded")) cfg.bounded = get_number_vector<int>(doc["bounded"], "bounded");
    cfg.grid_points = doc.value("grid_points", cfg.grid_points);
    cfg.stage1_budget = doc.value("stage1_budget", cfg.stage1_budget);
    cfg.payoff_budget = doc.value("payoff_budget", cfg.payoff_budget);
    cfg.total_budget = doc.value("total_budget", cfg.total_budget);
    cfg.deterministic = doc.value("deterministic", cfg.deterministic);
    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        cfg.solver.seed = s.value("seed", cfg.solver.seed);
        cfg.solver.threads = s.value("threads", cfg.solver.threads);
        cfg.solver.abs_gap = s.value("abs_gap", cfg.solver.abs_gap);
        cfg.solver.rel_gap = s.value("rel_gap", cfg.solver.rel_gap);
        cfg.solver.deterministic = s.value("deterministic", cfg.solver.deterministic);
    }
    return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
    return {{"primary", cfg.primary},
            {"bounded", cfg.bounded},
            {"grid_points", cfg.grid_points},
            {"stage1_budget", cfg.stage1_budget},
            {"payoff_budget", cfg.payoff_budget},
            {"total_budget", cfg.total_budget},
            {"deterministic", cfg.deterministic},
            {"solver",
             {{"seed", cfg.solver.seed},
              {"threads", cfg.solver.threads},
              {"abs_gap", cfg.solver.abs_gap},
              {"rel_gap", cfg.solver.rel_gap},
              {"deterministic", cfg.solver.deterministic}}}};
}

namespace {

json table_to_json(const IdealNadir& t) {
    json rows = json::array();
    for (const auto& row : t.payoff) rows.push_back(row);
    json optimal = json::array();
    for (bool b : t.row_optimal) optimal.push_back(b);
    return {{"payoff", std::move(rows)},
            {"ideal", t.ideal},
            {"nadir", t.nadir},
            {"row_optimal", std::move(optimal)},
            {"perturb_exponent", t.perturb_exponent}};
}

IdealNadir table_from_json(const json& j) {
    IdealNadir t;
    const std::string where = "result.payoff_table";
    const json& rows = field(j, "payoff", where);
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(kNumObjectives))
        fail(where, "payoff must have 7 rows");
    for (int r = 0; r < kNumObjectives; ++r) {
        auto row = get_number_vector<std::int64_t>(rows[static_cast<std::size_t>(r)], where);
        if (row.size() != static_cast<std::size_t>(kNumObjectives))
            fail(where, "payoff rows must have 7 entries");
        for (int c = 0; c < kNumObjectives; ++c)
            t.payoff[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                row[static_cast<std::size_t>(c)];
    }
    auto ideal = get_number_vector<std::int64_t>(field(j, "ideal", where), where + ".ideal");
    auto nadir = get_number_vector<std::int64_t>(field(j, "nadir", where), where + ".nadir");
    if (ideal.size() != static_cast<std::size_t>(kNumObjectives) ||
        nadir.size() != static_cast<std::size_t>(kNumObjectives))
        fail(where, "ideal and nadir must have 7 entries");
    const json& optimal = field(j, "row_optimal", where);
    if (!optimal.is_array() || optimal.size() != static_cast<std::size_t>(kNumObjectives))
        fail(where, "row_optimal must have 7 entries");
    for (int i = 0; i < kNumObjectives; ++i) {
        t.ideal[static_cast<std::size_t>(i)] = ideal[static_cast<std::size_t>(i)];
        t.nadir[static_cast<std::size_t>(i)] = nadir[static_cast<std::size_t>(i)];
        t.row_optimal[static_cast<std::size_t>(i)] = optimal[static_cast<std::size_t>(i)].get<bool>();
    }
    t.perturb_exponent = get_int(j, "perturb_exponent", where);
    return t;
}

json assignments_to_json(const std::vector<Assignment>& assignments) {
    json arr = json::array();
    for (const auto& a : assignments)
        arr.push_back({{"member", a.member},
                       {"defence", a.defence},
                       {"role", a.role},
                       {"day", a.day},
                       {"hour", a.hour},
                       {"room", a.room}});
    return arr;
}

std::vector<Assignment> assignments_from_json(const json& arr, const std::string& where) {
    if (!arr.is_array()) fail(where, "assignments must be an array");
    std::vector<Assignment> out;
    for (const auto& e : arr) {
        Assignment a;
        a.member = get_int(e, "member", where);
        a.defence = get_int(e, "defence", where);
        a.role = get_int(e, "role", where);
        a.day = get_int(e, "day", where);
        a.hour = get_int(e, "hour", where);
        a.room = get_int(e, "room", where);
        out.push_back(a);
    }
    return out;
}

}  // namespace

json result_to_json(const RunLog& log, const std::string& digest, const json& config_echo,
                    const std::string& instance_type, const std::string& data_label) {
    json doc;
    doc["format"] = kResultFormat;
    doc["version"] = kFormatVersion;
    doc["instance_digest"] = digest;
    doc["instance_type"] = instance_type;
    doc["data_label"] = data_label.empty() ? "-" : data_label;
    doc["config"] = config_echo;
    doc["g"] = log.g;
    doc["g_optimal"] = log.g_optimal;
    doc["payoff_table"] = table_to_json(log.table);
    doc["grid"] = {{"size", log.grid_size},
                   {"bounded", log.active_bounded},
                   {"steps", log.active_steps}};
    doc["counters"] = {{"solutions", log.n_solutions},
                       {"infeasible", log.n_infeasible},
                       {"skip_solutions", log.skip_solutions},
                       {"skip_infeasible", log.skip_infeasible},
                       {"time_with_incumbent", log.time_with_incumbent},
                       {"time_without_incumbent", log.time_without_incumbent}};
    doc["times"] = {{"stage1", log.stage1_seconds},
                    {"payoff", log.payoff_seconds},
                    {"grid", log.grid_seconds},
                    {"total", log.stage1_seconds + log.payoff_seconds + log.grid_seconds}};

    json solutions = json::array();
    for (const auto& s : log.solutions) {
        json js;
        js["raw"] = s.raw.z;
        js["canonical"] = s.canonical;
        js["v"] = s.v;
        js["epsilon_scaled"] = s.epsilon_scaled;
        js["dominated_in_full"] = s.dominated_in_full;
        js["num_scheduled"] = s.schedule.num_scheduled;
        js["assignments"] = assignments_to_json(s.schedule.assignments);
        solutions.push_back(std::move(js));
    }
    doc["solutions"] = std::move(solutions);

    json iterations = json::array();
    for (const auto& it : log.iterations)
        iterations.push_back({{"v", it.v}, {"status", it.status}, {"seconds", it.seconds}});
    doc["iterations"] = std::move(iterations);
    return doc;
}

ResultFile result_from_json(const json& doc) {
    const std::string where = "result";
    if (!doc.is_object()) fail(where, "document must be an object");
    if (field(doc, "format", where) != kResultFormat) fail(where, "unknown format tag");
    if (field(doc, "version", where) != kFormatVersion) fail(where, "unsupported version");

    ResultFile r;
    r.digest = field(doc, "instance_digest", where).get<std::string>();
    r.instance_type = doc.value("instance_type", std::string("-"));
    r.data_label = doc.value("data_label", std::string("-"));
    r.config = doc.value("config", json::object());
    r.g = get_int(doc, "g", where);
    r.g_optimal = field(doc, "g_optimal", where).get<bool>();
    r.table = table_from_json(field(doc, "payoff_table", where));

    const json& grid = field(doc, "grid", where);
    r.grid_size = field(grid, "size", "grid").get<std::int64_t>();
    r.active_bounded = get_number_vector<int>(field(grid, "bounded", "grid"), "grid.bounded");
    r.active_steps = get_number_vector<int>(field(grid, "steps", "grid"), "grid.steps");

    const json& counters = field(doc, "counters", where);
    r.n_solutions = get_int(counters, "solutions", "counters");
    r.n_infeasible = get_int(counters, "infeasible", "counters");
    r.skip_solutions = get_int(counters, "skip_solutions", "counters");
    r.skip_infeasible = get_int(counters, "skip_infeasible", "counters");
    r.time_with_incumbent = get_int(counters, "time_with_incumbent", "counters");
    r.time_without_incumbent = get_int(counters, "time_without_incumbent", "counters");

    const json& times = field(doc, "times", where);
    r.stage1_seconds = field(times, "stage1", "times").get<double>();
    r.payoff_seconds = field(times, "payoff", "times").get<double>();
    r.grid_seconds = field(times, "grid", "times").get<double>();

    const json& solutions = field(doc, "solutions", where);
    if (!solutions.is_array()) fail(where, "solutions must be an array");
    for (std::size_t i = 0; i < solutions.size(); ++i) {
        const json& js = solutions[i];
        const std::string sw = "solutions[" + std::to_string(i) + "]";
        SolutionRecord s;
        auto raw = get_number_vector<std::int64_t>(field(js, "raw", sw), sw + ".raw");
        if (raw.size() != static_cast<std::size_t>(kNumObjectives)) fail(sw, "raw must have 7 entries");
        for (int z = 0; z < kNumObjectives; ++z)
            s.raw.z[static_cast<std::size_t>(z)] = raw[static_cast<std::size_t>(z)];
        s.canonical = get_number_vector<std::int64_t>(field(js, "canonical", sw), sw + ".canonical");
        s.v = get_number_vector<int>(field(js, "v", sw), sw + ".v");
        s.epsilon_scaled =
            get_number_vector<std::int64_t>(field(js, "epsilon_scaled", sw), sw + ".epsilon_scaled");
        s.dominated_in_full = field(js, "dominated_in_full", sw).get<bool>();
        s.schedule.num_scheduled = get_int(js, "num_scheduled", sw);
        s.schedule.assignments = assignments_from_json(field(js, "assignments", sw), sw);
        r.solutions.push_back(std::move(s));
    }

    const json& iterations = field(doc, "iterations", where);
    if (!iterations.is_array()) fail(where, "iterations must be an array");
    for (const auto& ji : iterations) {
        IterationRecord it;
        it.v = get_number_vector<int>(field(ji, "v", "iterations"), "iterations.v");
        it.status = field(ji, "status", "iterations").get<std::string>();
        it.seconds = field(ji, "seconds", "iterations").get<double>();
        r.iterations.push_back(std::move(it));
    }
    return r;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace defsched
