#include "defsched/generator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "defsched/rng.hpp"
#include "defsched/validate.hpp"

namespace defsched {

namespace {

// Substream tags; the tag is the first element of every derivation path so the
// draw domains can never collide.
enum StreamTag : std::uint64_t {
    kMemberWeight = 1,
    kMemberSubjects,
    kMemberCompact,
    kMemberRoomchange,
    kMemberAvailability,
    kDefenceSubjects,
    kRolePool,
    kFixedRoleDraw,
    kRoomAvailability,
};

void check_probs(const std::vector<double>& probs, const char* what) {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument(std::string(what) + ": negative probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": probabilities must sum to 1");
}

std::size_t pick_profile(Rng& rng, const std::vector<ProfileChoice>& choices) {
    std::vector<double> probs;
    probs.reserve(choices.size());
    for (const auto& c : choices) probs.push_back(c.prob);
    return rng.pick_weighted(probs);
}

}  // namespace

std::string instance_type_string(const GeneratorConfig& cfg) {
    std::ostringstream os;
    os << "p(" << cfg.n_members << "." << cfg.n_defences << "." << cfg.n_roles << "." << cfg.n_days
       << "." << cfg.n_slots << "." << cfg.n_rooms << "." << cfg.n_subjects << ")";
    return os.str();
}

void validate_generator_config(const GeneratorConfig& cfg) {
    if (cfg.n_members < 1 || cfg.n_defences < 1 || cfg.n_roles < 1 || cfg.n_days < 1 ||
        cfg.n_slots < 1 || cfg.n_rooms < 1 || cfg.n_subjects < 1)
        throw std::invalid_argument("generator: all dimensions must be >= 1");
    if (cfg.duration < 1 || cfg.duration > cfg.n_slots)
        throw std::invalid_argument("generator: duration must lie in [1, n_slots]");
    if (cfg.weight_values.empty() || cfg.weight_values.size() != cfg.weight_probs.size())
        throw std::invalid_argument("generator: weight values/probabilities mismatch");
    for (auto w : cfg.weight_values)
        if (w < 1) throw std::invalid_argument("generator: member weights must be >= 1");
    check_probs(cfg.weight_probs, "generator weights");
    if (!(cfg.committee_cap_fraction > 0.0))
        throw std::invalid_argument("generator: committee cap fraction must be positive");
    if (cfg.subjects_per_member < 0 || cfg.subjects_per_member > cfg.n_subjects ||
        cfg.subjects_per_defence < 0 || cfg.subjects_per_defence > cfg.n_subjects)
        throw std::invalid_argument("generator: subjects per member/defence out of range");
    if (static_cast<int>(cfg.roles.size()) != cfg.n_roles)
        throw std::invalid_argument("generator: need one role pool spec per role");
    for (const auto& r : cfg.roles) {
        if (r.pool_size < 0 || r.pool_size > cfg.n_members)
            throw std::invalid_argument("generator: role pool size out of range");
    }
    for (const auto* profiles : {&cfg.compact_profiles, &cfg.roomchange_profiles}) {
        if (profiles->empty()) throw std::invalid_argument("generator: empty profile choice list");
        std::vector<double> probs;
        for (const auto& c : *profiles) {
            if (c.weights.empty() || static_cast<int>(c.weights.size()) > cfg.duration)
                throw std::invalid_argument(
                    "generator: profile length must lie in [1, duration] (window <= duration-1)");
            for (auto w : c.weights)
                if (w < 0) throw std::invalid_argument("generator: profile weights must be >= 0");
            probs.push_back(c.prob);
        }
        check_probs(probs, "generator profiles");
    }
    for (const auto* chain : {&cfg.member_chain, &cfg.room_chain}) {
        if (chain->n_avail_states < 1)
            throw std::invalid_argument("generator: chains need at least one availability state");
        if (static_cast<int>(chain->self_probs.size()) != chain->n_avail_states + 1)
            throw std::invalid_argument("generator: chain self_probs must cover levels 0..n_avail_states");
        if (chain->warmup < 0) throw std::invalid_argument("generator: warmup must be >= 0");
    }
}

AvailabilityChainSpec resolve_chain(const ChainConfig& chain, int duration) {
    AvailabilityChainSpec spec;
    spec.n_avail_states = chain.n_avail_states;
    spec.duration = duration;
    spec.self_probs = chain.self_probs;
    spec.warmup = chain.warmup;
    if (chain.target_unavailable >= 0.0) {
        const double x = calibrate_avail_self_prob(spec, chain.target_unavailable);
        for (int alpha = 1; alpha <= spec.n_avail_states; ++alpha)
            spec.self_probs[static_cast<std::size_t>(alpha)] = x;
    }
    return spec;
}

std::vector<std::vector<std::vector<int>>> generate_availability(const AvailabilityChainSpec& spec,
                                                                 int n_rows, int n_days, int n_slots,
                                                                 std::uint64_t seed,
                                                                 std::uint64_t stream_tag) {
    const TransitionMatrix t = derive_transition_probs(spec);
    std::vector<std::vector<std::vector<int>>> out(
        static_cast<std::size_t>(n_rows),
        std::vector<std::vector<int>>(static_cast<std::size_t>(n_days),
                                      std::vector<int>(static_cast<std::size_t>(n_slots), 0)));
    for (int row = 0; row < n_rows; ++row)
        for (int day = 0; day < n_days; ++day) {
            Rng rng(derive_stream(seed, {stream_tag, static_cast<std::uint64_t>(row),
                                         static_cast<std::uint64_t>(day)}));
            int state = t.plain_zero();
            for (int step = 0; step < spec.warmup + n_slots; ++step) {
                state = static_cast<int>(rng.pick_weighted(t.p[static_cast<std::size_t>(state)]));
                if (step >= spec.warmup)
                    out[static_cast<std::size_t>(row)][static_cast<std::size_t>(day)]
                       [static_cast<std::size_t>(step - spec.warmup)] = t.level_of_state(state);
            }
        }
    return out;
}

Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed) {
    validate_generator_config(cfg);

    Instance inst;
    inst.n_members = cfg.n_members;
    inst.n_defences = cfg.n_defences;
    inst.n_roles = cfg.n_roles;
    inst.n_days = cfg.n_days;
    inst.n_slots = cfg.n_slots;
    inst.n_rooms = cfg.n_rooms;
    inst.n_subjects = cfg.n_subjects;
    inst.duration = cfg.duration;

    const int cap = static_cast<int>(
        std::ceil(cfg.committee_cap_fraction * static_cast<double>(cfg.n_members) - 1e-9));

    const AvailabilityChainSpec member_spec = resolve_chain(cfg.member_chain, cfg.duration);
    const AvailabilityChainSpec room_spec = resolve_chain(cfg.room_chain, cfg.duration);
    const auto member_avail = generate_availability(member_spec, cfg.n_members, cfg.n_days,
                                                    cfg.n_slots, seed, kMemberAvailability);
    const auto room_avail =
        generate_availability(room_spec, cfg.n_rooms, cfg.n_days, cfg.n_slots, seed, kRoomAvailability);

    inst.members.resize(static_cast<std::size_t>(cfg.n_members));
    for (int i = 0; i < cfg.n_members; ++i) {
        auto& m = inst.members[static_cast<std::size_t>(i)];
        const auto id = static_cast<std::uint64_t>(i);

        Rng weight_rng(derive_stream(seed, {kMemberWeight, id}));
        m.weight = cfg.weight_values[weight_rng.pick_weighted(cfg.weight_probs)];
        m.max_committees = cap;

        Rng subject_rng(derive_stream(seed, {kMemberSubjects, id}));
        m.subjects.assign(static_cast<std::size_t>(cfg.n_subjects), 0);
        for (int q : subject_rng.sample_without_replacement(cfg.n_subjects, cfg.subjects_per_member))
            m.subjects[static_cast<std::size_t>(q)] = 1;

        Rng compact_rng(derive_stream(seed, {kMemberCompact, id}));
        m.compact_weights = cfg.compact_profiles[pick_profile(compact_rng, cfg.compact_profiles)].weights;
        m.compact_window = static_cast<int>(m.compact_weights.size()) - 1;

        Rng roomchg_rng(derive_stream(seed, {kMemberRoomchange, id}));
        m.roomchange_penalties =
            cfg.roomchange_profiles[pick_profile(roomchg_rng, cfg.roomchange_profiles)].weights;
        m.roomchange_window = static_cast<int>(m.roomchange_penalties.size()) - 1;

        m.availability = member_avail[static_cast<std::size_t>(i)];
    }

    // Role pools: the members who can take each role at all.
    std::vector<std::vector<int>> pools(static_cast<std::size_t>(cfg.n_roles));
    for (int t = 0; t < cfg.n_roles; ++t) {
        const auto& spec = cfg.roles[static_cast<std::size_t>(t)];
        if (spec.pool_size == 0) {
            pools[static_cast<std::size_t>(t)].resize(static_cast<std::size_t>(cfg.n_members));
            for (int i = 0; i < cfg.n_members; ++i) pools[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = i;
        } else {
            Rng pool_rng(derive_stream(seed, {kRolePool, static_cast<std::uint64_t>(t)}));
            pools[static_cast<std::size_t>(t)] =
                pool_rng.sample_without_replacement(cfg.n_members, spec.pool_size);
        }
    }

    inst.defences.resize(static_cast<std::size_t>(cfg.n_defences));
    for (int j = 0; j < cfg.n_defences; ++j) {
        auto& dfc = inst.defences[static_cast<std::size_t>(j)];
        const auto id = static_cast<std::uint64_t>(j);

        Rng subject_rng(derive_stream(seed, {kDefenceSubjects, id}));
        dfc.subjects.assign(static_cast<std::size_t>(cfg.n_subjects), 0);
        for (int q : subject_rng.sample_without_replacement(cfg.n_subjects, cfg.subjects_per_defence))
            dfc.subjects[static_cast<std::size_t>(q)] = 1;

        dfc.eligibility.assign(static_cast<std::size_t>(cfg.n_roles),
                               std::vector<std::uint8_t>(static_cast<std::size_t>(cfg.n_members), 0));

        // Fixed roles are drawn in ascending role order, never reusing a member
        // already placed on this defence's committee.
        std::vector<std::uint8_t> taken(static_cast<std::size_t>(cfg.n_members), 0);
        for (int t = 0; t < cfg.n_roles; ++t) {
            const auto& spec = cfg.roles[static_cast<std::size_t>(t)];
            auto& row = dfc.eligibility[static_cast<std::size_t>(t)];
            if (!spec.fixed) {
                for (int i : pools[static_cast<std::size_t>(t)]) row[static_cast<std::size_t>(i)] = 1;
                continue;
            }
            std::vector<int> candidates;
            for (int i : pools[static_cast<std::size_t>(t)])
                if (!taken[static_cast<std::size_t>(i)]) candidates.push_back(i);
            if (candidates.empty())
                throw std::runtime_error("generator: fixed role " + std::to_string(t + 1) +
                                         " has no candidate left for defence " + std::to_string(j + 1));
            Rng draw_rng(derive_stream(seed, {kFixedRoleDraw, static_cast<std::uint64_t>(t), id}));
            const int pick = candidates[static_cast<std::size_t>(
                draw_rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1))];
            row[static_cast<std::size_t>(pick)] = 1;
            taken[static_cast<std::size_t>(pick)] = 1;
        }
    }

    // Rooms: any positive level counts as available.
    inst.room_availability.assign(
        static_cast<std::size_t>(cfg.n_days),
        std::vector<std::vector<std::uint8_t>>(static_cast<std::size_t>(cfg.n_slots),
                                               std::vector<std::uint8_t>(static_cast<std::size_t>(cfg.n_rooms), 0)));
    for (int p = 0; p < cfg.n_rooms; ++p)
        for (int k = 0; k < cfg.n_days; ++k)
            for (int l = 0; l < cfg.n_slots; ++l)
                inst.room_availability[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]
                                      [static_cast<std::size_t>(p)] =
                    room_avail[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)]
                              [static_cast<std::size_t>(l)] > 0
                        ? 1
                        : 0;

    if (auto problems = validate_instance(inst); !problems.empty())
        throw std::logic_error("generator: produced an invalid instance: " + problems.front().message);
    return inst;
}

}  // namespace defsched
