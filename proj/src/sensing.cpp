#include "lumisim/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace lumisim {

void SensorSpec::validate() const {
    if (p_d_moving < 0.0 || p_d_moving > 1.0 || p_d_static < 0.0 || p_d_static > 1.0 ||
        p_false_alarm < 0.0 || p_false_alarm > 1.0) {
        throw std::invalid_argument("sensor " + id + ": probability outside [0,1]");
    }
    if (!(view_angle > 0.0) || view_angle > 2.0 * M_PI + 1e-12) {
        throw std::invalid_argument("sensor " + id + ": view angle outside (0, 2*pi]");
    }
    if (!(radius > 0.0)) {
        throw std::invalid_argument("sensor " + id + ": radius must be > 0");
    }
    if (lambda < 0.0 || !(beta > 0.0)) {
        throw std::invalid_argument("sensor " + id + ": bad decay parameters");
    }
    const double norm = std::hypot(dir_x, dir_y);
    if (std::abs(norm - 1.0) > 1e-6) {
        throw std::invalid_argument("sensor " + id + ": direction is not a unit vector");
    }
}

double coverage_factor(const SensorSpec& sensor, double x, double y) {
    const double dx = x - sensor.x;
    const double dy = y - sensor.y;
    const double d = std::hypot(dx, dy);
    if (d == 0.0) return 1.0;  // on top of the sensor: inside coverage
    double cos_a = (dx * sensor.dir_x + dy * sensor.dir_y) / d;
    if (cos_a > 1.0) cos_a = 1.0;
    if (cos_a < -1.0) cos_a = -1.0;
    const double angle = std::acos(cos_a);
    if (angle > sensor.view_angle / 2.0) return 0.0;
    if (d <= sensor.radius) return 1.0;
    return std::exp(-sensor.lambda * std::pow(d - sensor.radius, sensor.beta));
}

double detection_likelihood(const SensorSpec& sensor, double x, double y, bool moving,
                            int bit) {
    const double p_d = moving ? sensor.p_d_moving : sensor.p_d_static;
    const double c = coverage_factor(sensor, x, y);
    const double p1 = 1.0 - (1.0 - p_d * c) * (1.0 - sensor.p_false_alarm);
    return bit ? p1 : 1.0 - p1;
}

MeasurementVector sample_measurements(std::span<const SensorSpec> sensors,
                                      const StateVector& prev, const StateVector& cur,
                                      int t, RngStream& rng) {
    const bool moving = !cur.same_position(prev);
    MeasurementVector m;
    m.t = t;
    m.bits.reserve(sensors.size());
    for (const SensorSpec& s : sensors) {
        const double p1 = detection_likelihood(s, cur.x, cur.y, moving, 1);
        m.bits.push_back(rng.bernoulli(p1) ? 1 : 0);
    }
    return m;
}

}  // namespace lumisim
