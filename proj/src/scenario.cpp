#include "lumisim/scenario.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace lumisim {

std::string controller_name(ControllerKind kind) {
    switch (kind) {
        case ControllerKind::proposed: return "proposed";
        case ControllerKind::dimmer: return "dimmer";
        case ControllerKind::batch: return "batch";
        case ControllerKind::individual: return "individual";
        case ControllerKind::perfect: return "perfect";
    }
    return "unknown";
}

ControllerKind controller_from_name(const std::string& name) {
    if (name == "proposed") return ControllerKind::proposed;
    if (name == "dimmer") return ControllerKind::dimmer;
    if (name == "batch") return ControllerKind::batch;
    if (name == "individual") return ControllerKind::individual;
    if (name == "perfect") return ControllerKind::perfect;
    throw std::invalid_argument("unknown controller: " + name);
}

namespace {

void check_segment_clear(const RoomLayout& layout, const Waypoint& a, const Waypoint& b,
                         double step) {
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 0; k <= n; ++k) {
        const double f = static_cast<double>(k) / n;
        const double x = a.x + f * (b.x - a.x);
        const double y = a.y + f * (b.y - a.y);
        if (!is_valid_position(layout, x, y)) {
            throw std::invalid_argument("scenario: waypoint segment crosses an invalid region");
        }
    }
}

}  // namespace

void Scenario::validate() const {
    layout.validate();
    motion.validate();
    if (!(grid.cell_size > 0.0)) {
        throw std::invalid_argument("scenario: grid.cell_size must be > 0");
    }
    if (speed_levels.empty()) {
        throw std::invalid_argument("scenario: speed_levels must be nonempty");
    }
    for (double s : speed_levels) {
        if (s < 0.0) throw std::invalid_argument("scenario: negative speed level");
    }

    if (luminaires.empty()) throw std::invalid_argument("scenario: no luminaires");
    std::set<std::string> lum_ids;
    for (const LuminaireSpec& lum : luminaires) {
        if (!(lum.f_full > 0.0) || !(lum.r > 0.0)) {
            throw std::invalid_argument("luminaire " + lum.id + ": f_full and r must be > 0");
        }
        if (!(lum.z > surface_height)) {
            throw std::invalid_argument("luminaire " + lum.id + ": below working surface");
        }
        if (!(lum.lambertian_order >= 1.0)) {
            throw std::invalid_argument("luminaire " + lum.id + ": lambertian_order must be >= 1");
        }
        if (!lum_ids.insert(lum.id).second) {
            throw std::invalid_argument("luminaire " + lum.id + ": duplicate id");
        }
    }
    if (reflection_gain < 0.0) {
        throw std::invalid_argument("scenario: reflection_gain must be >= 0");
    }

    if (sensors.empty()) throw std::invalid_argument("scenario: no sensors");
    std::set<std::string> sensor_ids;
    for (const SensorSpec& s : sensors) {
        s.validate();
        if (!sensor_ids.insert(s.id).second) {
            throw std::invalid_argument("sensor " + s.id + ": duplicate id");
        }
    }
    if (illumination_sensors.empty()) {
        throw std::invalid_argument("scenario: no illumination sensors");
    }
    for (const IlluminationSensorSpec& s : illumination_sensors) {
        if (s.x < 0.0 || s.x > layout.width || s.y < 0.0 || s.y > layout.depth) {
            throw std::invalid_argument("illumination sensor " + s.id + ": outside the room");
        }
    }

    if (!individual_pairing.empty()) {
        if (individual_pairing.size() != luminaires.size()) {
            throw std::invalid_argument("scenario: individual_pairing must list one sensor per luminaire");
        }
        for (int idx : individual_pairing) {
            if (idx < 0 || idx >= static_cast<int>(sensors.size())) {
                throw std::invalid_argument("scenario: individual_pairing sensor index out of range");
            }
        }
    }

    if (!(f_min > 0.0)) throw std::invalid_argument("scenario: f_min must be > 0");
    if (th_c < 0.0 || th_c >= 1.0) throw std::invalid_argument("scenario: th_c outside [0,1)");
    if (delay_seconds < 0.0) throw std::invalid_argument("scenario: delay_seconds must be >= 0");
    if (margin_lux < 0.0) throw std::invalid_argument("scenario: margin_lux must be >= 0");
    if (power.c_s < 0.0) throw std::invalid_argument("scenario: overhead power must be >= 0");
    if (duration_steps < 1) throw std::invalid_argument("scenario: duration_steps must be >= 1");

    if (walk_mode == WalkMode::waypoints) {
        if (waypoints.empty()) {
            throw std::invalid_argument("scenario: waypoint walk needs at least one waypoint");
        }
        if (!(walk_speed > 0.0)) {
            throw std::invalid_argument("scenario: walk_speed must be > 0");
        }
        for (const Waypoint& w : waypoints) {
            if (w.dwell_steps < 0) {
                throw std::invalid_argument("scenario: negative dwell_steps");
            }
            if (!is_valid_position(layout, w.x, w.y)) {
                throw std::invalid_argument("scenario: waypoint at an invalid position");
            }
        }
        for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) {
            check_segment_clear(layout, waypoints[k], waypoints[k + 1], grid.cell_size / 4.0);
        }
    } else {
        if (!is_valid_position(layout, start.x, start.y)) {
            throw std::invalid_argument("scenario: random-walk start at an invalid position");
        }
    }

    for (const auto& row : environment.table) {
        if (row.size() != illumination_sensors.size()) {
            throw std::invalid_argument(
                "scenario: environment table row width differs from sensor count");
        }
        for (double v : row) {
            if (v < 0.0) throw std::invalid_argument("scenario: negative environment lux");
        }
    }
    if (environment.constant < 0.0) {
        throw std::invalid_argument("scenario: negative environment lux");
    }
}

Scenario default_office_scenario() {
    Scenario sc;
    sc.name = "office";

    sc.layout.width = 7.2;
    sc.layout.depth = 4.2;
    // Two desk islands flush with the left wall; the right end stays open.
    sc.layout.invalid_regions = {
        {0.0, 3.4, 5.4, 4.2},
        {0.0, 0.0, 5.4, 0.8},
    };
    // The occupant lingers at the four desk seats and at the right-end desk.
    sc.layout.static_zones = {
        {{4.1, 2.5, 4.9, 3.3}, 0.8},
        {{1.7, 2.5, 2.5, 3.3}, 0.8},
        {{1.1, 0.9, 1.9, 1.7}, 0.8},
        {{3.5, 0.9, 4.3, 1.7}, 0.8},
        {{6.1, 0.7, 6.9, 1.5}, 0.8},
    };
    sc.layout.static_default = 0.5;

    sc.grid.cell_size = 0.3;
    sc.speed_levels = {0.0, 0.45, 0.9};
    sc.motion = {0.5, 0.2, 1.0};
    sc.surface_height = 0.7;
    sc.reflection_gain = 0.9;

    const double f_full = 4500.0;
    const double r = 100.0 / f_full;  // 100 W at full level
    sc.luminaires = {
        {"L1", 0.8, 1.2, 2.5, f_full, r, 2.0},
        {"L2", 2.9, 1.2, 2.5, f_full, r, 2.0},
        {"L3", 5.0, 1.2, 2.5, f_full, r, 2.0},
        {"L4", 1.8, 3.0, 2.5, f_full, r, 2.0},
        {"L5", 3.9, 3.0, 2.5, f_full, r, 2.0},
        {"L6", 6.4, 3.3, 2.5, f_full, r, 2.0},
        {"L7", 6.4, 0.9, 2.5, f_full, r, 2.0},
    };

    const double alpha = 160.0 * M_PI / 180.0;
    const double radius = 1.8;
    auto sensor = [&](const char* id, double x, double y, double dx, double dy) {
        const double norm = std::hypot(dx, dy);
        SensorSpec s;
        s.id = id;
        s.x = x;
        s.y = y;
        s.dir_x = dx / norm;
        s.dir_y = dy / norm;
        s.view_angle = alpha;
        s.radius = radius;
        s.p_d_moving = 0.8;
        s.p_d_static = 0.1;
        s.lambda = 4.0;
        s.beta = 2.0;
        s.p_false_alarm = 0.0;
        return s;
    };
    // Six desk-edge fans (the outer pairs angled toward the wall ends) and a
    // back-to-back pair watching the open right end.
    sc.sensors = {
        sensor("S1", 1.5, 3.45, -0.2, -1.0),
        sensor("S2", 3.0, 3.45, 0.0, -1.0),
        sensor("S3", 4.8, 3.45, 0.45, -1.0),
        sensor("S4", 1.5, 0.75, -0.2, 1.0),
        sensor("S5", 3.0, 0.75, 0.0, 1.0),
        sensor("S6", 4.8, 0.75, 0.45, 1.0),
        sensor("S7", 6.75, 2.1, 0.0, 1.0),
        sensor("S8", 6.75, 2.1, 0.0, -1.0),
    };
    sc.illumination_sensors.clear();
    for (const SensorSpec& s : sc.sensors) {
        sc.illumination_sensors.push_back({"I" + s.id.substr(1), s.x, s.y});
    }
    // Light -> nearest desk sensor, for the individual-control baseline.
    sc.individual_pairing = {3, 4, 5, 1, 2, 6, 7};

    sc.f_min = 400.0;
    sc.th_c = 0.0005;
    sc.delay_seconds = 30.0;
    sc.margin_lux = 1.0;
    sc.power.c_s = 0.0;
    sc.onoff_mode = OnOffMode::exhaustive;

    sc.walk_mode = WalkMode::waypoints;
    sc.walk_speed = 0.45;
    sc.waypoints = {
        {6.9, 3.9, 0},
        {6.5, 2.3, 10},
        {4.5, 2.9, 60},
        {2.1, 2.9, 50},
        {0.9, 2.1, 0},
        {1.5, 1.3, 60},
        {3.9, 1.3, 50},
        {5.7, 1.3, 10},
        {6.5, 1.1, 40},
    };
    sc.start = {3.6, 2.1, 0};
    sc.duration_steps = 320;

    return sc;
}

}  // namespace lumisim
