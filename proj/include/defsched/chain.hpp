#pragma once

#include <cstdint>
#include <vector>

namespace defsched {

// Availability of a resource (member or room) over a day is modelled as a walk
// on the states {0, 1, .., n_avail_states}: 0 means unavailable, level alpha >= 1
// means available with preference alpha. Only the self-transition probabilities
// are specified; cross-probabilities are derived so that, given the walk leaves
// a state, it lands on the others proportionally to their self-probabilities.
//
// A defence blocks `duration` consecutive slots, so an unavailability episode
// shorter than `duration` could never absorb one. To make short gaps meaningful
// the chain inserts duration-1 forced "exceptional" zero slots in front of every
// unavailability episode entered from an availability state.
struct AvailabilityChainSpec {
    int n_avail_states = 1;           // availability levels 1..n_avail_states
    int duration = 1;                 // slots per defence (drives the forced-run length)
    std::vector<double> self_probs;   // p(0|0), p(1|1), .., indexed by level
    int warmup = 40;                  // burn-in draws discarded at the start of each day
};

// Row-stochastic matrix over the expanded state space, ordered as
//   [0_e1, .., 0_e(duration-1), 0, 1, .., n_avail_states]
// where 0_er is the r-th slot of a forced exceptional zero run.
struct TransitionMatrix {
    int n_avail_states = 0;
    int duration = 1;
    std::vector<std::vector<double>> p;

    int num_states() const { return duration - 1 + 1 + n_avail_states; }
    int plain_zero() const { return duration - 1; }
    // Expanded-state index of availability level alpha (alpha = 0 -> plain zero).
    int state_of_level(int alpha) const { return duration - 1 + alpha; }
    // Availability level written out for a state (all zero flavours -> 0).
    int level_of_state(int s) const { return s < duration ? 0 : s - (duration - 1); }
};

// Build the expanded transition matrix from self-probabilities. Throws
// std::invalid_argument on malformed input (probabilities outside [0,1),
// size mismatch, non-positive duration).
TransitionMatrix derive_transition_probs(const AvailabilityChainSpec& spec);

// Row of T^steps for the walk started in the plain-zero state.
std::vector<double> steady_state(const TransitionMatrix& t, int steps);

// Fixed point of the chain by power iteration from the plain-zero state,
// converged to max-norm difference below `tol`.
std::vector<double> stationary_distribution(const TransitionMatrix& t, double tol = 1e-13,
                                            int max_iter = 100000);

struct BlockDurations {
    std::vector<double> expected_avail;  // E(run length of level alpha), indexed 1..n_avail_states
    double expected_unavail = 0.0;       // E(full unavailability episode length)
};

// Expected sojourn lengths from the self-probabilities: an availability run is
// geometric with mean 1/(1-p(alpha|alpha)); an unavailability episode is the
// duration-1 forced slots plus a geometric plain-zero tail. Throws if any state
// is absorbing (self-probability 1).
BlockDurations expected_block_durations(const AvailabilityChainSpec& spec);

// Stationary probability that a zero slot belongs to the forced exceptional run:
// (duration - 1) / E(unavailability episode length).
double exceptional_prob(const AvailabilityChainSpec& spec);

// Stationary distribution over the *observed* levels {0, 1, .., n_avail_states}
// (all zero flavours folded together), obtained by solving the linear system of
// total-probability balance equations with the effective zero-state conditionals.
// Independent of the power-iteration path; used to cross-check it.
std::vector<double> solve_distribution_system(const AvailabilityChainSpec& spec);

// Total stationary unavailability (the folded zero mass) for a spec.
double stationary_unavailable(const AvailabilityChainSpec& spec);

// Find the common availability self-probability that makes the stationary
// unavailable mass hit `target` (the zero self-probability is kept as given).
// Monotone in the self-probability, solved by bisection to `tol`.
double calibrate_avail_self_prob(const AvailabilityChainSpec& spec, double target, double tol = 1e-12);

}  // namespace defsched
