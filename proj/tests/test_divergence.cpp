#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "recipgrowth/datasets.hpp"
#include "recipgrowth/divergence.hpp"
#include "recipgrowth/errors.hpp"

using namespace recipgrowth;

namespace {

// Hyperbolic trend with mild noise in the baseline years and a controllable
// shortfall (epsilon > 0) or overshoot (epsilon < 0) ramping in over the tail.
TimeSeries trend_with_departure(double epsilon, std::uint32_t seed = 1234,
                                double sigma = 0.01) {
    const double a0 = 6.0, a1 = -0.05;
    std::vector<double> t, v;
    for (int i = 0; i < 30; ++i) {
        t.push_back(2.0 * i); // 0..58, line stays >= 3.1
        v.push_back(1.0 / (a0 + a1 * t.back()));
    }
    v = testhelp::noisy(v, sigma, seed);
    // last 10 points depart with linearly increasing strength
    for (int i = 20; i < 30; ++i) {
        double ramp = (i - 19) / 10.0;
        v[static_cast<std::size_t>(i)] /= 1.0 + epsilon * ramp;
    }
    return testhelp::make_series(t, v);
}

const Window kBaseline{0.0, 38.0}; // first 20 points

} // namespace

TEST_CASE("a trajectory that follows its trend does not diverge") {
    TimeSeries s = trend_with_departure(0.0, 55); // no departure, baseline-level noise
    DivergenceReport rep = detect_divergence(s, kBaseline, {}, {});
    CHECK(rep.direction == Direction::none);
    CHECK_FALSE(rep.onset.has_value());
    CHECK(rep.run_length == 0);
}

TEST_CASE("a shortfall reads as slower growth and an overshoot as faster") {
    TimeSeries slow = trend_with_departure(0.15);
    DivergenceReport rep = detect_divergence(slow, kBaseline, {}, {});
    CHECK(rep.direction == Direction::slower);
    REQUIRE(rep.onset.has_value());
    CHECK(*rep.onset > 38.0);
    CHECK(rep.run_length >= 3);
    CHECK(rep.max_z > 2.0);

    TimeSeries fast = trend_with_departure(-0.13);
    DivergenceReport rep2 = detect_divergence(fast, kBaseline, {}, {});
    CHECK(rep2.direction == Direction::faster);
}

TEST_CASE("stronger departures are flagged no later") {
    // The baseline window is untouched by the departure, so its fit and rmse
    // are shared; a larger shortfall can only extend the qualifying run.
    std::vector<double> onsets;
    for (double eps : {0.08, 0.15, 0.30}) {
        DivergenceReport rep = detect_divergence(trend_with_departure(eps), kBaseline, {}, {});
        REQUIRE(rep.direction == Direction::slower);
        REQUIRE(rep.onset.has_value());
        onsets.push_back(*rep.onset);
    }
    CHECK(onsets[1] <= onsets[0]);
    CHECK(onsets[2] <= onsets[1]);
}

TEST_CASE("detection is deterministic") {
    TimeSeries s = trend_with_departure(0.12);
    DivergenceReport a = detect_divergence(s, kBaseline, {}, {});
    DivergenceReport b = detect_divergence(s, kBaseline, {}, {});
    CHECK(a.direction == b.direction);
    CHECK(a.onset == b.onset);
    CHECK(a.run_length == b.run_length);
    CHECK(a.max_z == b.max_z);
    CHECK(a.baseline.a0 == b.baseline.a0);
    CHECK(a.baseline.a1 == b.baseline.a1);
}

TEST_CASE("the qualifying run must be terminal and long enough") {
    // a mid-tail bump that returns to trend must not be flagged
    TimeSeries s = trend_with_departure(0.0, 77, 0.005);
    std::vector<double> t, v;
    for (const auto& p : s.points()) {
        t.push_back(p.t);
        v.push_back(p.value);
    }
    v[23] /= 1.4;
    v[24] /= 1.4;
    v[25] /= 1.4; // bump, then back on trend through the end
    DivergenceReport rep = detect_divergence(testhelp::make_series(t, v), kBaseline, {}, {});
    CHECK(rep.direction == Direction::none);

    // only the last two points depart: below the default min_run of 3
    std::vector<double> v2 = v;
    v2[23] *= 1.4;
    v2[24] *= 1.4;
    v2[25] *= 1.4;
    v2[28] /= 1.5;
    v2[29] /= 1.5;
    DivergenceReport rep2 = detect_divergence(testhelp::make_series(t, v2), kBaseline, {}, {});
    CHECK(rep2.direction == Direction::none);

    DivergenceParams relaxed;
    relaxed.min_run = 2;
    DivergenceReport rep3 =
        detect_divergence(testhelp::make_series(t, v2), kBaseline, relaxed, {});
    CHECK(rep3.direction == Direction::slower);
    CHECK(rep3.run_length == 2);
}

TEST_CASE("sign summaries of residual runs") {
    CHECK(divergence_sign_of({0.1, 0.2, 0.3}) == Direction::slower);
    CHECK(divergence_sign_of({-0.1, -0.2}) == Direction::faster);
    CHECK_THROWS_AS(divergence_sign_of({0.1, -0.1}), ArgumentError);
    CHECK_THROWS_AS(divergence_sign_of({}), ArgumentError);
    CHECK_THROWS_AS(divergence_sign_of({0.0, 0.1}), ArgumentError);
}

TEST_CASE("input contracts are enforced") {
    TimeSeries s = trend_with_departure(0.1);
    CHECK_THROWS_AS(detect_divergence(s, {0.0, 4.0}, {}, {}), InsufficientDataError);
    CHECK_THROWS_AS(detect_divergence(s, {0.0, 58.0}, {}, {}), ArgumentError); // no tail
    DivergenceParams bad;
    bad.z_threshold = -1.0;
    CHECK_THROWS_AS(detect_divergence(s, kBaseline, bad, {}), ArgumentError);
    bad.z_threshold = 2.0;
    bad.min_run = 0;
    CHECK_THROWS_AS(detect_divergence(s, kBaseline, bad, {}), ArgumentError);
}

TEST_CASE("report invariants hold across a parameter sweep") {
    for (double eps : {0.0, 0.05, 0.12, 0.25}) {
        for (double z : {1.0, 2.0, 4.0}) {
            DivergenceParams p;
            p.z_threshold = z;
            DivergenceReport rep =
                detect_divergence(trend_with_departure(eps), kBaseline, p, {});
            CHECK((rep.direction == Direction::none) == !rep.onset.has_value());
            if (rep.direction != Direction::none) {
                CHECK(rep.run_length >= p.min_run);
                CHECK(rep.max_z > z);
                CHECK(*rep.onset > kBaseline.t_max);
            }
        }
    }
}

TEST_CASE("frozen values: African population leaves its pre-1960 trend") {
    TimeSeries africa = load_bundled("africa_population");
    DivergenceParams p;
    p.z_threshold = 0.75;
    DivergenceReport rep = detect_divergence(africa, {1870.0, 1960.0}, p, {});
    CHECK(rep.direction == Direction::slower);
    REQUIRE(rep.onset.has_value());
    CHECK(*rep.onset == 1980.0);

    // at the default threshold the departure still shows, just later
    DivergenceReport strict = detect_divergence(africa, {1870.0, 1960.0}, {}, {});
    CHECK(strict.direction == Direction::slower);
    REQUIRE(strict.onset.has_value());
    CHECK(*strict.onset == 1990.0);
}

TEST_CASE("frozen values: world output falls behind its long-run trajectory") {
    TimeSeries gdp = load_bundled("world_gdp");
    DivergenceParams p;
    p.z_threshold = 1.25;
    DivergenceReport rep = detect_divergence(gdp, {1000.0, 1955.0}, p, {});
    CHECK(rep.direction == Direction::slower);
    REQUIRE(rep.onset.has_value());
    CHECK(*rep.onset == 1990.0);
    CHECK(rep.run_length == 4);
}
