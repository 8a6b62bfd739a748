#include "defsched/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace defsched {

namespace {

void validate_spec(const AvailabilityChainSpec& spec) {
    if (spec.n_avail_states < 1)
        throw std::invalid_argument("chain: need at least one availability state");
    if (spec.duration < 1) throw std::invalid_argument("chain: duration must be >= 1");
    if (static_cast<int>(spec.self_probs.size()) != spec.n_avail_states + 1)
        throw std::invalid_argument("chain: self_probs must have one entry per level 0..n_avail_states");
    for (double p : spec.self_probs)
        if (!(p >= 0.0 && p < 1.0))
            throw std::invalid_argument("chain: self-probabilities must lie in [0, 1)");
}

// Probability of moving to level `to` given the walk leaves level `from`:
// proportional to the target's self-probability. When every destination has
// self-probability zero the proportional rule has no preference, so the
// leaving mass is spread uniformly (this keeps the chain well defined at the
// bisection bracket ends during calibration).
double cross_prob(const std::vector<double>& self, int from, int to) {
    double denom = 0.0;
    for (std::size_t x = 0; x < self.size(); ++x)
        if (static_cast<int>(x) != from) denom += self[x];
    const double leave = 1.0 - self[static_cast<std::size_t>(from)];
    if (denom <= 0.0) return leave / static_cast<double>(self.size() - 1);
    return self[static_cast<std::size_t>(to)] / denom * leave;
}

// Solve A x = b by Gaussian elimination with partial pivoting (tiny systems).
std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-14)
            throw std::runtime_error("chain: singular balance system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace

TransitionMatrix derive_transition_probs(const AvailabilityChainSpec& spec) {
    validate_spec(spec);
    const int d = spec.duration;
    const int na = spec.n_avail_states;
    const auto& self = spec.self_probs;

    TransitionMatrix t;
    t.n_avail_states = na;
    t.duration = d;
    const int n = t.num_states();
    t.p.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));

    // Forced exceptional run: 0_e1 -> 0_e2 -> .. -> 0_e(d-1) -> plain 0.
    for (int r = 0; r + 1 < d - 1; ++r) t.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + 1)] = 1.0;
    if (d > 1) t.p[static_cast<std::size_t>(d - 2)][static_cast<std::size_t>(t.plain_zero())] = 1.0;

    // Plain zero: stay or move to an availability level. No forced run is
    // entered from here (the episode is already at least duration slots old).
    {
        auto& row = t.p[static_cast<std::size_t>(t.plain_zero())];
        row[static_cast<std::size_t>(t.plain_zero())] = self[0];
        for (int alpha = 1; alpha <= na; ++alpha)
            row[static_cast<std::size_t>(t.state_of_level(alpha))] = cross_prob(self, 0, alpha);
    }

    // Availability levels: stay, hop to another level, or start an
    // unavailability episode (through the forced run when duration > 1).
    for (int alpha = 1; alpha <= na; ++alpha) {
        auto& row = t.p[static_cast<std::size_t>(t.state_of_level(alpha))];
        row[static_cast<std::size_t>(t.state_of_level(alpha))] = self[static_cast<std::size_t>(alpha)];
        for (int other = 1; other <= na; ++other)
            if (other != alpha)
                row[static_cast<std::size_t>(t.state_of_level(other))] = cross_prob(self, alpha, other);
        const double to_zero = cross_prob(self, alpha, 0);
        if (d > 1)
            row[0] += to_zero;  // 0_e1
        else
            row[static_cast<std::size_t>(t.plain_zero())] += to_zero;
    }

    for (const auto& row : t.p) {
        double sum = 0.0;
        for (double v : row) sum += v;
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::runtime_error("chain: derived transition row does not sum to 1");
    }
    return t;
}

namespace {

std::vector<double> multiply(const std::vector<double>& x, const TransitionMatrix& t) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) y[j] += x[i] * t.p[i][j];
    }
    return y;
}

}  // namespace

std::vector<double> steady_state(const TransitionMatrix& t, int steps) {
    if (steps < 0) throw std::invalid_argument("steady_state: steps must be >= 0");
    const int n = t.num_states();
    for (const auto& row : t.p) {
        double sum = 0.0;
        for (double v : row) sum += v;
        if (std::fabs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("steady_state: matrix is not row-stochastic");
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[static_cast<std::size_t>(t.plain_zero())] = 1.0;
    for (int s = 0; s < steps; ++s) x = multiply(x, t);
    return x;
}

std::vector<double> stationary_distribution(const TransitionMatrix& t, double tol, int max_iter) {
    std::vector<double> x(static_cast<std::size_t>(t.num_states()), 0.0);
    x[static_cast<std::size_t>(t.plain_zero())] = 1.0;
    for (int it = 0; it < max_iter; ++it) {
        auto y = multiply(x, t);
        double diff = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) diff = std::max(diff, std::fabs(y[i] - x[i]));
        x = std::move(y);
        if (diff < tol) return x;
    }
    throw std::runtime_error("stationary_distribution: power iteration did not converge");
}

BlockDurations expected_block_durations(const AvailabilityChainSpec& spec) {
    validate_spec(spec);
    BlockDurations out;
    out.expected_avail.assign(static_cast<std::size_t>(spec.n_avail_states) + 1, 0.0);
    for (int alpha = 1; alpha <= spec.n_avail_states; ++alpha)
        out.expected_avail[static_cast<std::size_t>(alpha)] =
            1.0 / (1.0 - spec.self_probs[static_cast<std::size_t>(alpha)]);
    out.expected_unavail = (spec.duration - 1) + 1.0 / (1.0 - spec.self_probs[0]);
    return out;
}

double exceptional_prob(const AvailabilityChainSpec& spec) {
    const auto blocks = expected_block_durations(spec);
    return (spec.duration - 1) / blocks.expected_unavail;
}

std::vector<double> solve_distribution_system(const AvailabilityChainSpec& spec) {
    validate_spec(spec);
    const int na = spec.n_avail_states;
    const auto& self = spec.self_probs;
    const double pe = exceptional_prob(spec);

    // Effective chain over observed levels {0, .., na}: conditioned on sitting in
    // an exceptional zero slot the next slot is zero with certainty, so the
    // folded zero row mixes that with the plain-zero conditionals.
    const std::size_t n = static_cast<std::size_t>(na) + 1;
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    p[0][0] = pe + (1.0 - pe) * self[0];
    for (int alpha = 1; alpha <= na; ++alpha)
        p[0][static_cast<std::size_t>(alpha)] = (1.0 - pe) * cross_prob(self, 0, alpha);
    for (int alpha = 1; alpha <= na; ++alpha) {
        auto& row = p[static_cast<std::size_t>(alpha)];
        row[static_cast<std::size_t>(alpha)] = self[static_cast<std::size_t>(alpha)];
        row[0] = cross_prob(self, alpha, 0);
        for (int other = 1; other <= na; ++other)
            if (other != alpha) row[static_cast<std::size_t>(other)] = cross_prob(self, alpha, other);
    }

    // pi P = pi with sum(pi) = 1: rows of (P^T - I), last one replaced by ones.
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (std::size_t r = 0; r + 1 < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = p[c][r] - (r == c ? 1.0 : 0.0);
    }
    for (std::size_t c = 0; c < n; ++c) a[n - 1][c] = 1.0;
    b[n - 1] = 1.0;
    return gauss_solve(std::move(a), std::move(b));
}

double stationary_unavailable(const AvailabilityChainSpec& spec) {
    return solve_distribution_system(spec)[0];
}

double calibrate_avail_self_prob(const AvailabilityChainSpec& spec, double target, double tol) {
    validate_spec(spec);
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("calibrate: target unavailability must lie in (0, 1)");

    auto unavail_at = [&](double x) {
        AvailabilityChainSpec s = spec;
        for (int alpha = 1; alpha <= s.n_avail_states; ++alpha)
            s.self_probs[static_cast<std::size_t>(alpha)] = x;
        return stationary_unavailable(s);
    };

    double lo = 0.0, hi = 1.0 - 1e-12;
    if (unavail_at(lo) < target)
        throw std::invalid_argument("calibrate: target above the achievable unavailability range");
    if (unavail_at(hi) > target)
        throw std::invalid_argument("calibrate: target below the achievable unavailability range");
    // Unavailability decreases monotonically in the availability self-probability.
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (unavail_at(mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace defsched
