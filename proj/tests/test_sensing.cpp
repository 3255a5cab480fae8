#include "lumisim/sensing.hpp"

#include <cmath>

#include "doctest.h"

using namespace lumisim;

namespace {

SensorSpec fan_sensor(double x = 0.0, double y = 0.0, double dx = 1.0, double dy = 0.0) {
    SensorSpec s;
    s.id = "S";
    s.x = x;
    s.y = y;
    const double norm = std::hypot(dx, dy);
    s.dir_x = dx / norm;
    s.dir_y = dy / norm;
    s.view_angle = M_PI / 2.0;  // 90 degree fan
    s.radius = 2.0;
    s.p_d_moving = 0.8;
    s.p_d_static = 0.1;
    s.lambda = 2.0;
    s.beta = 1.0;
    s.p_false_alarm = 0.0;
    return s;
}

}  // namespace

TEST_CASE("coverage factor cases") {
    const SensorSpec s = fan_sensor();

    // On boresight inside the effective radius.
    CHECK(coverage_factor(s, 1.0, 0.0) == 1.0);
    // At the full view angle (alpha > alpha/2): outside the fan.
    CHECK(coverage_factor(s, std::cos(s.view_angle), std::sin(s.view_angle)) == 0.0);
    // Behind the sensor.
    CHECK(coverage_factor(s, -1.0, 0.0) == 0.0);
    // Boresight at R + 0.5 with lambda=2, beta=1: exp(-1).
    CHECK(coverage_factor(s, 2.5, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    // Coincident with the sensor counts as covered.
    CHECK(coverage_factor(s, 0.0, 0.0) == 1.0);
}

TEST_CASE("coverage factor is continuous across the radius") {
    const SensorSpec s = fan_sensor();
    CHECK(coverage_factor(s, s.radius - 1e-9, 0.0) == 1.0);
    CHECK(coverage_factor(s, s.radius + 1e-9, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
    // Decay is monotone beyond the radius.
    double prev = 1.0;
    for (double d = s.radius; d < s.radius + 3.0; d += 0.1) {
        const double c = coverage_factor(s, d, 0.0);
        CHECK(c <= prev + 1e-15);
        prev = c;
    }
}

TEST_CASE("detection likelihood hits the measured office probabilities") {
    const SensorSpec s = fan_sensor();
    CHECK(detection_likelihood(s, 1.0, 0.0, true, 1) == doctest::Approx(0.8));
    CHECK(detection_likelihood(s, 1.0, 0.0, false, 1) == doctest::Approx(0.1));
    // Out of the fan with zero false alarm: a 0 is certain.
    CHECK(detection_likelihood(s, -1.0, 0.0, true, 0) == 1.0);
    CHECK(detection_likelihood(s, -1.0, 0.0, true, 1) == 0.0);
}

TEST_CASE("bit likelihoods complement exactly") {
    SensorSpec s = fan_sensor();
    RngStream rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        s.p_d_moving = rng.uniform01();
        s.p_d_static = rng.uniform01();
        s.p_false_alarm = trial % 3 == 0 ? rng.uniform(0.0, 0.2) : 0.0;
        const double x = rng.uniform(-3.0, 3.0);
        const double y = rng.uniform(-3.0, 3.0);
        const bool moving = trial % 2 == 0;
        const double p1 = detection_likelihood(s, x, y, moving, 1);
        const double p0 = detection_likelihood(s, x, y, moving, 0);
        CHECK(p1 + p0 == 1.0);
        CHECK(p1 >= 0.0);
        CHECK(p1 <= 1.0);
    }
}

TEST_CASE("false alarm combines with detection as independent causes") {
    SensorSpec s = fan_sensor();
    s.p_false_alarm = 0.05;
    // Out of coverage only the false alarm remains.
    CHECK(detection_likelihood(s, -1.0, 0.0, true, 1) == doctest::Approx(0.05));
    // In coverage: 1 - (1-0.8)(1-0.05).
    CHECK(detection_likelihood(s, 1.0, 0.0, true, 1) == doctest::Approx(1.0 - 0.2 * 0.95));
}

TEST_CASE("a user outside every fan never triggers") {
    const std::vector<SensorSpec> sensors = {fan_sensor(0, 0, 1, 0), fan_sensor(5, 5, 0, 1)};
    RngStream rng(3);
    const StateVector prev{-2.0, 0.0, 0.0, 0.0};
    const StateVector cur{-2.5, 0.0, -0.5, 0.0};
    for (int t = 0; t < 200; ++t) {
        const MeasurementVector m = sample_measurements(sensors, prev, cur, t, rng);
        REQUIRE(m.bits.size() == 2);
        CHECK(m.bits[0] == 0);
        CHECK(m.bits[1] == 0);
        CHECK_FALSE(m.any());
    }
}

TEST_CASE("static user in one fan fires at the static rate") {
    const std::vector<SensorSpec> sensors = {fan_sensor()};
    RngStream rng(17);
    const StateVector pos{1.0, 0.0, 0.0, 0.0};
    int hits = 0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        hits += sample_measurements(sensors, pos, pos, t, rng).bits[0];
    }
    const double rate = static_cast<double>(hits) / draws;
    CHECK(rate == doctest::Approx(0.1).epsilon(0.1));
    CHECK(std::abs(rate - 0.1) < 0.01);
}

TEST_CASE("overlapping fans fire independently for a moving user") {
    const std::vector<SensorSpec> sensors = {fan_sensor(0, 0, 1, 0), fan_sensor(2, 0, -1, 0)};
    RngStream rng(29);
    const StateVector prev{0.9, 0.0, 0.0, 0.0};
    const StateVector cur{1.0, 0.0, 0.1, 0.0};
    int both = 0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        const MeasurementVector m = sample_measurements(sensors, prev, cur, t, rng);
        if (m.bits[0] && m.bits[1]) ++both;
    }
    const double rate = static_cast<double>(both) / draws;
    CHECK(std::abs(rate - 0.64) < 0.02);
}

TEST_CASE("sensor validation rejects malformed specs") {
    SensorSpec s = fan_sensor();
    s.dir_x = 2.0;
    CHECK_THROWS(s.validate());
    s = fan_sensor();
    s.p_d_moving = 1.5;
    CHECK_THROWS(s.validate());
    s = fan_sensor();
    s.radius = 0.0;
    CHECK_THROWS(s.validate());
    s = fan_sensor();
    s.beta = 0.0;
    CHECK_THROWS(s.validate());
    CHECK_NOTHROW(fan_sensor().validate());
}
