#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "defsched/chain.hpp"

using namespace defsched;

namespace {

AvailabilityChainSpec spec_of(std::vector<double> self, int duration) {
    AvailabilityChainSpec s;
    s.n_avail_states = static_cast<int>(self.size()) - 1;
    s.duration = duration;
    s.self_probs = std::move(self);
    return s;
}

// Zero mass of the folded stationary distribution.
double folded_zero(const AvailabilityChainSpec& spec) {
    const auto t = derive_transition_probs(spec);
    const auto pi = stationary_distribution(t);
    double z = 0.0;
    for (int s = 0; s < spec.duration; ++s) z += pi[static_cast<std::size_t>(s)];
    return z;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("two-level matrix has the documented entries") {
    const auto t = derive_transition_probs(spec_of({0.95, 0.7, 0.7}, 2));
    REQUIRE(t.num_states() == 4);
    CHECK(t.plain_zero() == 1);

    // Exceptional zero slot advances deterministically into the plain zero.
    CHECK(t.p[0][0] == doctest::Approx(0.0));
    CHECK(t.p[0][1] == doctest::Approx(1.0));

    // Plain zero: stays with 0.95, leaves evenly to the equally-likely levels.
    CHECK(t.p[1][1] == doctest::Approx(0.95));
    CHECK(t.p[1][2] == doctest::Approx(0.025));
    CHECK(t.p[1][3] == doctest::Approx(0.025));
    CHECK(t.p[1][0] == doctest::Approx(0.0));  // zero cannot re-enter the forced run

    // Level 1: leaves with 0.3, splits 0.95 : 0.7 between zero and level 2,
    // and the zero share lands on the forced run, exactly 19/110 and 7/55.
    CHECK(t.p[2][2] == doctest::Approx(0.7));
    CHECK(t.p[2][0] == doctest::Approx(19.0 / 110.0).epsilon(1e-12));
    CHECK(t.p[2][1] == doctest::Approx(0.0));
    CHECK(t.p[2][3] == doctest::Approx(7.0 / 55.0).epsilon(1e-12));

    // Level 2 mirrors level 1.
    CHECK(t.p[3][3] == doctest::Approx(0.7));
    CHECK(t.p[3][0] == doctest::Approx(19.0 / 110.0).epsilon(1e-12));
    CHECK(t.p[3][2] == doctest::Approx(7.0 / 55.0).epsilon(1e-12));

    for (const auto& row : t.p) {
        double sum = 0.0;
        for (double p : row) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("forty warm-up steps land on the frozen distribution") {
    const auto t = derive_transition_probs(spec_of({0.95, 0.7, 0.7}, 2));
    const auto v = steady_state(t, 40);
    REQUIRE(v.size() == 4);
    // Reference values from an independent matrix-power computation.
    CHECK(v[0] == doctest::Approx(0.037326950290).epsilon(1e-9));
    CHECK(v[1] == doctest::Approx(0.746568103445).epsilon(1e-9));
    CHECK(v[2] == doctest::Approx(0.108052473133).epsilon(1e-9));
    CHECK(v[3] == doctest::Approx(0.108052473133).epsilon(1e-9));

    // Zero steps is the point mass at the plain zero.
    const auto v0 = steady_state(t, 0);
    CHECK(v0[1] == doctest::Approx(1.0));
}

TEST_CASE("power iteration matches independently computed stationary masses") {
    // Folded zero masses computed with an eigen decomposition outside this
    // code base. The two-level specs are the member settings; the binary
    // ones are the room settings.
    CHECK(folded_zero(spec_of({0.95, 0.70, 0.70}, 2)) ==
          doctest::Approx(0.7838899804).epsilon(1e-9));
    CHECK(folded_zero(spec_of({0.95, 0.63, 0.63}, 2)) ==
          doctest::Approx(0.8236902304).epsilon(1e-9));
    CHECK(folded_zero(spec_of({0.95, 0.55, 0.55}, 2)) ==
          doctest::Approx(0.8568360773).epsilon(1e-9));
    CHECK(folded_zero(spec_of({0.95, 0.70}, 2)) == doctest::Approx(63.0 / 73.0).epsilon(1e-9));
    CHECK(folded_zero(spec_of({0.95, 0.80}, 2)) == doctest::Approx(21.0 / 26.0).epsilon(1e-9));
}

TEST_CASE("equal self-probabilities give symmetric level masses") {
    const auto spec = spec_of({0.95, 0.7, 0.7}, 2);
    const auto dist = solve_distribution_system(spec);
    REQUIRE(dist.size() == 3);
    CHECK(dist[1] == doctest::Approx(dist[2]).epsilon(1e-12));
    CHECK(dist[0] + dist[1] + dist[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist[0] == doctest::Approx(0.7838899804).epsilon(1e-9));
}

TEST_CASE("balance system agrees with power iteration on every table input") {
    const std::vector<AvailabilityChainSpec> specs = {
        spec_of({0.95, 0.70, 0.70}, 2), spec_of({0.95, 0.63, 0.63}, 2),
        spec_of({0.95, 0.55, 0.55}, 2), spec_of({0.95, 0.70}, 2),
        spec_of({0.95, 0.80}, 2),
    };
    for (const auto& spec : specs) {
        const auto sys = solve_distribution_system(spec);
        const auto t = derive_transition_probs(spec);
        const auto pi = stationary_distribution(t);
        // Fold the expanded zero flavours before comparing.
        std::vector<double> folded(sys.size(), 0.0);
        for (int s = 0; s < t.num_states(); ++s)
            folded[static_cast<std::size_t>(t.level_of_state(s))] += pi[static_cast<std::size_t>(s)];
        REQUIRE(folded.size() == sys.size());
        for (std::size_t a = 0; a < sys.size(); ++a)
            CHECK(sys[a] == doctest::Approx(folded[a]).epsilon(1e-10));
        CHECK(stationary_unavailable(spec) == doctest::Approx(sys[0]).epsilon(1e-12));
    }
}

TEST_CASE("expected block durations follow the geometric formulas") {
    const auto bd = expected_block_durations(spec_of({0.95, 0.7, 0.7}, 2));
    REQUIRE(bd.expected_avail.size() == 3);  // slot 0 unused
    CHECK(bd.expected_avail[1] == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(bd.expected_avail[2] == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    // One forced slot plus a geometric tail of mean 20.
    CHECK(bd.expected_unavail == doctest::Approx(21.0).epsilon(1e-12));
    CHECK(exceptional_prob(spec_of({0.95, 0.7, 0.7}, 2)) ==
          doctest::Approx(1.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("three-slot duration halves the episode into forced slots") {
    // p(0|0) = 0.5, duration 3: episodes average 2 + 1/0.5 = 4 slots, of
    // which the two forced ones are exactly half.
    const auto spec = spec_of({0.5, 0.7}, 3);
    CHECK(expected_block_durations(spec).expected_unavail == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(exceptional_prob(spec) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("duration one has no exceptional states") {
    const auto spec = spec_of({0.6, 0.8}, 1);
    const auto t = derive_transition_probs(spec);
    CHECK(t.num_states() == 2);
    CHECK(t.plain_zero() == 0);
    CHECK(t.p[0][0] == doctest::Approx(0.6));
    CHECK(t.p[0][1] == doctest::Approx(0.4));
    CHECK(exceptional_prob(spec) == doctest::Approx(0.0));
    // Renewal check: zero mass is E0 / (E0 + E1) = 2.5 / (2.5 + 5).
    CHECK(folded_zero(spec) == doctest::Approx(2.5 / 7.5).epsilon(1e-10));
}

TEST_CASE("calibration hits the requested zero mass") {
    // Binary rooms at d=2 with p(0|0)=0.95: a 0.80 target forces the
    // availability self-probability to exactly 17/21.
    auto spec = spec_of({0.95, 0.5}, 2);
    const double x = calibrate_avail_self_prob(spec, 0.80);
    CHECK(x == doctest::Approx(17.0 / 21.0).epsilon(1e-9));
    spec.self_probs[1] = x;
    CHECK(stationary_unavailable(spec) == doctest::Approx(0.80).epsilon(1e-9));

    // Recovering a known operating point: target the 0.78-column mass and
    // expect the 0.7 self-probability back.
    auto sym = spec_of({0.95, 0.5, 0.5}, 2);
    const double y = calibrate_avail_self_prob(sym, 0.7838899804);
    CHECK(y == doctest::Approx(0.7).epsilon(1e-6));
}

TEST_CASE("degenerate leave distributions fall back to a uniform spread") {
    // From level 1 every other state has self-probability zero, so the
    // proportional rule is undefined; the mass must spread evenly and rows
    // must stay stochastic.
    const auto t = derive_transition_probs(spec_of({0.0, 0.7, 0.0}, 1));
    for (const auto& row : t.p) {
        double sum = 0.0;
        for (double p : row) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(t.p[1][0] == doctest::Approx(0.15));
    CHECK(t.p[1][2] == doctest::Approx(0.15));
}

TEST_CASE("malformed specs are rejected") {
    CHECK_THROWS_AS(derive_transition_probs(spec_of({0.5}, 0)), std::invalid_argument);
    CHECK_THROWS_AS(derive_transition_probs(spec_of({0.5, 1.0}, 1)), std::invalid_argument);
    CHECK_THROWS_AS(derive_transition_probs(spec_of({-0.1, 0.5}, 1)), std::invalid_argument);
    auto bad = spec_of({0.5, 0.5}, 1);
    bad.self_probs.pop_back();
    CHECK_THROWS_AS(derive_transition_probs(bad), std::invalid_argument);
    CHECK_THROWS_AS(expected_block_durations(spec_of({0.5}, 1)), std::invalid_argument);
}

}  // TEST_SUITE
