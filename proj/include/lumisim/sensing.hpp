#ifndef LUMISIM_SENSING_HPP
#define LUMISIM_SENSING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lumisim/geometry.hpp"
#include "lumisim/rng.hpp"

namespace lumisim {

// Directional binary human detection sensor with a fan-shaped coverage.
struct SensorSpec {
    std::string id;
    double x = 0.0;
    double y = 0.0;
    double dir_x = 1.0;          // working direction, unit vector
    double dir_y = 0.0;
    double view_angle = M_PI;    // full fan angle alpha, radians
    double radius = 1.5;         // effective coverage radius R, meters
    double p_d_moving = 0.8;     // detection probability for a moving user
    double p_d_static = 0.1;     // detection probability for a static user
    double lambda = 4.0;         // out-of-radius decay rate
    double beta = 2.0;           // out-of-radius decay shape
    double p_false_alarm = 0.0;

    void validate() const;  // throws std::invalid_argument
};

// Binary outputs of every sensor at one time step.
struct MeasurementVector {
    int t = 0;
    std::vector<std::uint8_t> bits;

    bool any() const {
        for (auto b : bits)
            if (b) return true;
        return false;
    }
};

// Distance/angle attenuation of the detection probability: 1 inside the fan
// within radius R, exp(-lambda*(d-R)^beta) beyond R, 0 outside the fan.
double coverage_factor(const SensorSpec& sensor, double x, double y);

// Pr(b | position, moving/static) per the binary sensing model. With a
// nonzero false alarm rate, detection and false alarm combine as independent
// causes: Pr(b=1) = 1 - (1 - P_D c)(1 - p_fa).
double detection_likelihood(const SensorSpec& sensor, double x, double y, bool moving,
                            int bit);

// One Bernoulli draw per sensor; the user counts as moving when the position
// changed since the previous step.
MeasurementVector sample_measurements(std::span<const SensorSpec> sensors,
                                      const StateVector& prev, const StateVector& cur,
                                      int t, RngStream& rng);

}  // namespace lumisim

#endif  // LUMISIM_SENSING_HPP
