#ifndef LUMISIM_SCENARIO_HPP
#define LUMISIM_SCENARIO_HPP

#include <string>
#include <vector>

#include "lumisim/control.hpp"
#include "lumisim/geometry.hpp"
#include "lumisim/lighting.hpp"
#include "lumisim/motion.hpp"
#include "lumisim/sensing.hpp"

namespace lumisim {

struct Waypoint {
    double x = 0.0;
    double y = 0.0;
    int dwell_steps = 0;  // steps spent static after arriving
};

enum class WalkMode { waypoints, random_walk };

enum class ControllerKind { proposed, dimmer, batch, individual, perfect };

std::string controller_name(ControllerKind kind);
ControllerKind controller_from_name(const std::string& name);  // throws on unknown

// Environment illumination offered to the illumination sensors, either a
// constant or a per-step per-sensor table.
struct EnvironmentSchedule {
    double constant = 0.0;
    std::vector<std::vector<double>> table;  // [step][sensor]; empty = constant

    double value(int t, std::size_t sensor) const {
        if (table.empty()) return constant;
        const std::size_t row = std::min<std::size_t>(t, table.size() - 1);
        return table[row][sensor];
    }
};

// Everything needed to execute one closed-loop run.
struct Scenario {
    std::string name = "scenario";

    RoomLayout layout;
    GridSpec grid;
    std::vector<double> speed_levels = {0.0, 0.6, 1.2};
    MotionParams motion;
    double surface_height = 0.7;
    double reflection_gain = 0.9;

    std::vector<LuminaireSpec> luminaires;
    std::vector<SensorSpec> sensors;
    std::vector<IlluminationSensorSpec> illumination_sensors;
    std::vector<int> individual_pairing;  // sensor index per luminaire

    double f_min = 400.0;
    double th_c = 0.05;
    double delay_seconds = 30.0;
    double margin_lux = 1.0;
    SystemPowerConfig power;
    OnOffMode onoff_mode = OnOffMode::exhaustive;

    WalkMode walk_mode = WalkMode::waypoints;
    double walk_speed = 0.6;            // m/s along scripted segments
    Waypoint start;                     // random-walk start point
    std::vector<Waypoint> waypoints;    // scripted path
    int duration_steps = 1;

    EnvironmentSchedule environment;

    // Full consistency check; throws std::invalid_argument with a message
    // naming the offending piece. Called before any stepping.
    void validate() const;
};

// The office scenario shipped with the simulator: a 7.2 m x 4.2 m room with
// two desk islands, seven ceiling LED lights, and eight desk-mounted
// directional sensors, walked by a scripted mixed moving/static path.
Scenario default_office_scenario();

}  // namespace lumisim

#endif  // LUMISIM_SCENARIO_HPP
