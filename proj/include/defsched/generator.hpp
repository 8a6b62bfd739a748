#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "defsched/chain.hpp"
#include "defsched/types.hpp"

namespace defsched {

struct RolePoolSpec {
    int pool_size = 0;   // number of members that can take this role; 0 = everyone
    bool fixed = false;  // true: exactly one pool member is drawn per defence
};

// Weight profile over gap sizes 0..len-1, picked with probability `prob`.
struct ProfileChoice {
    std::vector<std::int64_t> weights;
    double prob = 0.0;
};

struct ChainConfig {
    int n_avail_states = 1;
    std::vector<double> self_probs;    // p(0|0), p(1|1), ..
    double target_unavailable = -1.0;  // >= 0: calibrate availability self-probs to hit this
    int warmup = 40;
};

struct GeneratorConfig {
    int n_members = 0;
    int n_defences = 0;
    int n_roles = 0;
    int n_days = 0;
    int n_slots = 0;
    int n_rooms = 0;
    int n_subjects = 0;
    int duration = 1;

    std::vector<std::int64_t> weight_values = {1, 2};
    std::vector<double> weight_probs = {0.7, 0.3};
    double committee_cap_fraction = 0.5;  // c_i = ceil(fraction * n_members), same for everyone
    int subjects_per_member = 3;
    int subjects_per_defence = 3;
    std::vector<RolePoolSpec> roles;  // one entry per role

    std::vector<ProfileChoice> compact_profiles = {{{1}, 0.5}, {{2, 1}, 0.5}};
    std::vector<ProfileChoice> roomchange_profiles = {{{1}, 0.5}, {{2, 1}, 0.5}};

    ChainConfig member_chain;
    ChainConfig room_chain;
};

// "p(n_members.n_defences.n_roles.n_days.n_slots.n_rooms.n_subjects)"
std::string instance_type_string(const GeneratorConfig& cfg);

// Throws std::invalid_argument describing the first problem found.
void validate_generator_config(const GeneratorConfig& cfg);

// Chain spec for the config's members or rooms with calibration applied.
AvailabilityChainSpec resolve_chain(const ChainConfig& chain, int duration);

// Availability walks: out[row][day][slot] is the drawn level (0 = unavailable).
// Each (row, day) pair gets its own substream of `seed` tagged by `stream_tag`,
// starts from the plain-zero state and discards the warm-up draws, so rows and
// days are independent and stable under changes elsewhere in the instance.
std::vector<std::vector<std::vector<int>>> generate_availability(const AvailabilityChainSpec& spec,
                                                                 int n_rows, int n_days, int n_slots,
                                                                 std::uint64_t seed,
                                                                 std::uint64_t stream_tag);

// Full random instance. Deterministic in (cfg, seed); equal seeds give equal
// instances. Throws std::invalid_argument on a malformed config and
// std::runtime_error if a fixed-role draw runs out of candidates.
Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed);

}  // namespace defsched
