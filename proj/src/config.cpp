#include "lumisim/config.hpp"

#include <cmath>
#include <map>

#include "json.hpp"

namespace lumisim {

namespace {

using nlohmann::json;

// Documented defaults (the reference table lives in the README).
constexpr double kDefaultStaticProb = 0.5;
constexpr double kDefaultThC = 0.05;
constexpr double kDefaultDelaySeconds = 30.0;
constexpr double kDefaultMarginLux = 1.0;
constexpr double kDefaultOverheadW = 0.0;
constexpr double kDefaultFMin = 400.0;
constexpr double kDefaultSurfaceHeight = 0.7;
constexpr double kDefaultReflectionGain = 0.9;
constexpr double kDefaultWalkSpeed = 0.6;
constexpr double kDefaultLambertianOrder = 1.0;
constexpr double kDefaultPFalseAlarm = 0.0;
const std::vector<double> kDefaultSpeedLevels = {0.0, 0.6, 1.2};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail(path + "." + key, "unknown key");
    }
}

const json& require(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + std::string(key), "missing required field");
    return j.at(key);
}

double get_number(const json& j, const std::string& path, const char* key) {
    const json& v = require(j, path, key);
    if (!v.is_number()) fail(path + "." + std::string(key), "expected a number");
    return v.get<double>();
}

double get_number_or(const json& j, const std::string& path, const char* key, double def) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + std::string(key), "expected a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& path, const char* key) {
    const json& v = require(j, path, key);
    if (!v.is_number_integer()) fail(path + "." + std::string(key), "expected an integer");
    return v.get<int>();
}

int get_int_or(const json& j, const std::string& path, const char* key, int def) {
    if (!j.contains(key)) return def;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + std::string(key), "expected an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& path, const char* key) {
    const json& v = require(j, path, key);
    if (!v.is_string()) fail(path + "." + std::string(key), "expected a string");
    return v.get<std::string>();
}

Rect parse_rect(const json& j, const std::string& path) {
    check_keys(j, path, {"x0", "y0", "x1", "y1"});
    Rect r;
    r.x0 = get_number(j, path, "x0");
    r.y0 = get_number(j, path, "y0");
    r.x1 = get_number(j, path, "x1");
    r.y1 = get_number(j, path, "y1");
    return r;
}

RoomLayout parse_room(const json& j, const std::string& path) {
    check_keys(j, path, {"width", "depth", "invalid_regions", "static_zones", "static_default"});
    RoomLayout room;
    room.width = get_number(j, path, "width");
    room.depth = get_number(j, path, "depth");
    if (!(room.width > 0.0)) fail(path + ".width", "must be > 0");
    if (!(room.depth > 0.0)) fail(path + ".depth", "must be > 0");
    if (j.contains("invalid_regions")) {
        const json& arr = j.at("invalid_regions");
        if (!arr.is_array()) fail(path + ".invalid_regions", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            room.invalid_regions.push_back(
                parse_rect(arr[i], path + ".invalid_regions[" + std::to_string(i) + "]"));
        }
    }
    if (j.contains("static_zones")) {
        const json& arr = j.at("static_zones");
        if (!arr.is_array()) fail(path + ".static_zones", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string zp = path + ".static_zones[" + std::to_string(i) + "]";
            check_keys(arr[i], zp, {"x0", "y0", "x1", "y1", "prob"});
            StaticZone zone;
            zone.rect.x0 = get_number(arr[i], zp, "x0");
            zone.rect.y0 = get_number(arr[i], zp, "y0");
            zone.rect.x1 = get_number(arr[i], zp, "x1");
            zone.rect.y1 = get_number(arr[i], zp, "y1");
            zone.prob = get_number(arr[i], zp, "prob");
            if (zone.prob < 0.0 || zone.prob > 1.0) fail(zp + ".prob", "must lie in [0,1]");
            room.static_zones.push_back(zone);
        }
    }
    room.static_default = get_number_or(j, path, "static_default", kDefaultStaticProb);
    return room;
}

}  // namespace

Scenario parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    check_keys(root, "config",
               {"name", "room", "grid", "speed_levels", "motion", "surface_height",
                "reflection_gain", "luminaires", "sensors", "illumination_sensors",
                "individual_pairing", "requirement", "control", "walk", "duration_steps",
                "environment"});

    Scenario sc;
    if (root.contains("name")) sc.name = get_string(root, "config", "name");

    sc.layout = parse_room(require(root, "config", "room"), "room");

    {
        const json& g = require(root, "config", "grid");
        check_keys(g, "grid", {"cell_size", "origin_x", "origin_y"});
        sc.grid.cell_size = get_number(g, "grid", "cell_size");
        if (!(sc.grid.cell_size > 0.0)) fail("grid.cell_size", "must be > 0");
        sc.grid.origin_x = get_number_or(g, "grid", "origin_x", 0.0);
        sc.grid.origin_y = get_number_or(g, "grid", "origin_y", 0.0);
    }

    if (root.contains("speed_levels")) {
        const json& arr = root.at("speed_levels");
        if (!arr.is_array() || arr.empty()) fail("speed_levels", "expected a nonempty array");
        sc.speed_levels.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number()) {
                fail("speed_levels[" + std::to_string(i) + "]", "expected a number");
            }
            const double s = arr[i].get<double>();
            if (s < 0.0) fail("speed_levels[" + std::to_string(i) + "]", "must be >= 0");
            sc.speed_levels.push_back(s);
        }
    } else {
        sc.speed_levels = kDefaultSpeedLevels;
    }

    {
        const json& m = require(root, "config", "motion");
        check_keys(m, "motion", {"sigma_a", "sigma_v", "dt"});
        sc.motion.sigma_a = get_number(m, "motion", "sigma_a");
        sc.motion.sigma_v = get_number(m, "motion", "sigma_v");
        sc.motion.dt = get_number(m, "motion", "dt");
        if (!(sc.motion.dt > 0.0)) fail("motion.dt", "must be > 0");
        if (sc.motion.sigma_a < 0.0) fail("motion.sigma_a", "must be >= 0");
        if (sc.motion.sigma_v < 0.0) fail("motion.sigma_v", "must be >= 0");
    }

    sc.surface_height = get_number_or(root, "config", "surface_height", kDefaultSurfaceHeight);
    sc.reflection_gain =
        get_number_or(root, "config", "reflection_gain", kDefaultReflectionGain);
    if (sc.reflection_gain < 0.0) fail("reflection_gain", "must be >= 0");

    {
        const json& arr = require(root, "config", "luminaires");
        if (!arr.is_array() || arr.empty()) fail("luminaires", "expected a nonempty array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string lp = "luminaires[" + std::to_string(i) + "]";
            check_keys(arr[i], lp, {"id", "x", "y", "z", "f_full", "r", "lambertian_order"});
            LuminaireSpec lum;
            lum.id = get_string(arr[i], lp, "id");
            lum.x = get_number(arr[i], lp, "x");
            lum.y = get_number(arr[i], lp, "y");
            lum.z = get_number(arr[i], lp, "z");
            lum.f_full = get_number(arr[i], lp, "f_full");
            lum.r = get_number(arr[i], lp, "r");
            lum.lambertian_order =
                get_number_or(arr[i], lp, "lambertian_order", kDefaultLambertianOrder);
            if (!(lum.f_full > 0.0)) fail(lp + ".f_full", "must be > 0");
            if (!(lum.r > 0.0)) fail(lp + ".r", "must be > 0");
            sc.luminaires.push_back(std::move(lum));
        }
    }

    std::map<std::string, int> sensor_index;
    {
        const json& arr = require(root, "config", "sensors");
        if (!arr.is_array() || arr.empty()) fail("sensors", "expected a nonempty array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string sp = "sensors[" + std::to_string(i) + "]";
            check_keys(arr[i], sp,
                       {"id", "x", "y", "direction_deg", "view_angle_deg", "radius",
                        "p_d_moving", "p_d_static", "lambda", "beta", "p_false_alarm"});
            SensorSpec s;
            s.id = get_string(arr[i], sp, "id");
            s.x = get_number(arr[i], sp, "x");
            s.y = get_number(arr[i], sp, "y");
            const double dir = get_number(arr[i], sp, "direction_deg") * M_PI / 180.0;
            s.dir_x = std::cos(dir);
            s.dir_y = std::sin(dir);
            s.view_angle = get_number(arr[i], sp, "view_angle_deg") * M_PI / 180.0;
            s.radius = get_number(arr[i], sp, "radius");
            s.p_d_moving = get_number(arr[i], sp, "p_d_moving");
            s.p_d_static = get_number(arr[i], sp, "p_d_static");
            s.lambda = get_number(arr[i], sp, "lambda");
            s.beta = get_number(arr[i], sp, "beta");
            s.p_false_alarm = get_number_or(arr[i], sp, "p_false_alarm", kDefaultPFalseAlarm);
            try {
                s.validate();
            } catch (const std::exception& e) {
                fail(sp, e.what());
            }
            if (!sensor_index.emplace(s.id, static_cast<int>(i)).second) {
                fail(sp + ".id", "duplicate sensor id");
            }
            sc.sensors.push_back(std::move(s));
        }
    }

    {
        const json& arr = require(root, "config", "illumination_sensors");
        if (!arr.is_array() || arr.empty()) {
            fail("illumination_sensors", "expected a nonempty array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string sp = "illumination_sensors[" + std::to_string(i) + "]";
            check_keys(arr[i], sp, {"id", "x", "y"});
            IlluminationSensorSpec s;
            s.id = get_string(arr[i], sp, "id");
            s.x = get_number(arr[i], sp, "x");
            s.y = get_number(arr[i], sp, "y");
            sc.illumination_sensors.push_back(std::move(s));
        }
    }

    if (root.contains("individual_pairing")) {
        const json& pairing = root.at("individual_pairing");
        if (!pairing.is_object()) fail("individual_pairing", "expected an object");
        sc.individual_pairing.assign(sc.luminaires.size(), -1);
        for (const auto& [lum_id, sensor_id] : pairing.items()) {
            int lum_idx = -1;
            for (std::size_t l = 0; l < sc.luminaires.size(); ++l) {
                if (sc.luminaires[l].id == lum_id) lum_idx = static_cast<int>(l);
            }
            if (lum_idx < 0) fail("individual_pairing." + lum_id, "unknown luminaire id");
            if (!sensor_id.is_string()) {
                fail("individual_pairing." + lum_id, "expected a sensor id string");
            }
            const auto it = sensor_index.find(sensor_id.get<std::string>());
            if (it == sensor_index.end()) {
                fail("individual_pairing." + lum_id, "unknown sensor id");
            }
            sc.individual_pairing[static_cast<std::size_t>(lum_idx)] = it->second;
        }
        for (std::size_t l = 0; l < sc.individual_pairing.size(); ++l) {
            if (sc.individual_pairing[l] < 0) {
                fail("individual_pairing", "missing entry for luminaire " + sc.luminaires[l].id);
            }
        }
    }

    if (root.contains("requirement")) {
        const json& req = root.at("requirement");
        check_keys(req, "requirement", {"f_min"});
        sc.f_min = get_number_or(req, "requirement", "f_min", kDefaultFMin);
        if (!(sc.f_min > 0.0)) fail("requirement.f_min", "must be > 0");
    } else {
        sc.f_min = kDefaultFMin;
    }

    if (root.contains("control")) {
        const json& ctl = root.at("control");
        check_keys(ctl, "control",
                   {"th_c", "delay_seconds", "margin_lux", "overhead_power_w", "onoff_mode"});
        sc.th_c = get_number_or(ctl, "control", "th_c", kDefaultThC);
        sc.delay_seconds = get_number_or(ctl, "control", "delay_seconds", kDefaultDelaySeconds);
        sc.margin_lux = get_number_or(ctl, "control", "margin_lux", kDefaultMarginLux);
        sc.power.c_s = get_number_or(ctl, "control", "overhead_power_w", kDefaultOverheadW);
        if (ctl.contains("onoff_mode")) {
            const std::string mode = get_string(ctl, "control", "onoff_mode");
            if (mode == "exhaustive") {
                sc.onoff_mode = OnOffMode::exhaustive;
            } else if (mode == "greedy") {
                sc.onoff_mode = OnOffMode::greedy;
            } else {
                fail("control.onoff_mode", "expected 'exhaustive' or 'greedy'");
            }
        }
        if (sc.th_c < 0.0 || sc.th_c >= 1.0) fail("control.th_c", "must lie in [0,1)");
    } else {
        sc.th_c = kDefaultThC;
        sc.delay_seconds = kDefaultDelaySeconds;
        sc.margin_lux = kDefaultMarginLux;
        sc.power.c_s = kDefaultOverheadW;
    }

    {
        const json& walk = require(root, "config", "walk");
        check_keys(walk, "walk", {"mode", "speed", "waypoints", "start"});
        const std::string mode = get_string(walk, "walk", "mode");
        if (mode == "waypoints") {
            sc.walk_mode = WalkMode::waypoints;
        } else if (mode == "random") {
            sc.walk_mode = WalkMode::random_walk;
        } else {
            fail("walk.mode", "expected 'waypoints' or 'random'");
        }
        sc.walk_speed = get_number_or(walk, "walk", "speed", kDefaultWalkSpeed);
        if (walk.contains("waypoints")) {
            const json& arr = walk.at("waypoints");
            if (!arr.is_array()) fail("walk.waypoints", "expected an array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string wp = "walk.waypoints[" + std::to_string(i) + "]";
                check_keys(arr[i], wp, {"x", "y", "dwell_steps"});
                Waypoint w;
                w.x = get_number(arr[i], wp, "x");
                w.y = get_number(arr[i], wp, "y");
                w.dwell_steps = get_int_or(arr[i], wp, "dwell_steps", 0);
                sc.waypoints.push_back(w);
            }
        }
        if (walk.contains("start")) {
            const json& s = walk.at("start");
            check_keys(s, "walk.start", {"x", "y"});
            sc.start.x = get_number(s, "walk.start", "x");
            sc.start.y = get_number(s, "walk.start", "y");
        } else if (!sc.waypoints.empty()) {
            sc.start.x = sc.waypoints.front().x;
            sc.start.y = sc.waypoints.front().y;
        }
    }

    sc.duration_steps = get_int(root, "config", "duration_steps");

    if (root.contains("environment")) {
        const json& env = root.at("environment");
        check_keys(env, "environment", {"constant_lux", "table"});
        sc.environment.constant = get_number_or(env, "environment", "constant_lux", 0.0);
        if (env.contains("table")) {
            const json& table = env.at("table");
            if (!table.is_array()) fail("environment.table", "expected an array of rows");
            for (std::size_t t = 0; t < table.size(); ++t) {
                const json& row = table[t];
                const std::string rp = "environment.table[" + std::to_string(t) + "]";
                if (!row.is_array()) fail(rp, "expected an array of lux values");
                std::vector<double> values;
                for (std::size_t s = 0; s < row.size(); ++s) {
                    if (!row[s].is_number()) {
                        fail(rp + "[" + std::to_string(s) + "]", "expected a number");
                    }
                    values.push_back(row[s].get<double>());
                }
                sc.environment.table.push_back(std::move(values));
            }
        }
    }

    try {
        sc.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    json root;
    root["name"] = sc.name;

    json room;
    room["width"] = sc.layout.width;
    room["depth"] = sc.layout.depth;
    room["invalid_regions"] = json::array();
    for (const Rect& r : sc.layout.invalid_regions) {
        room["invalid_regions"].push_back({{"x0", r.x0}, {"y0", r.y0}, {"x1", r.x1}, {"y1", r.y1}});
    }
    room["static_zones"] = json::array();
    for (const StaticZone& z : sc.layout.static_zones) {
        room["static_zones"].push_back({{"x0", z.rect.x0},
                                        {"y0", z.rect.y0},
                                        {"x1", z.rect.x1},
                                        {"y1", z.rect.y1},
                                        {"prob", z.prob}});
    }
    room["static_default"] = sc.layout.static_default;
    root["room"] = std::move(room);

    root["grid"] = {{"cell_size", sc.grid.cell_size},
                    {"origin_x", sc.grid.origin_x},
                    {"origin_y", sc.grid.origin_y}};
    root["speed_levels"] = sc.speed_levels;
    root["motion"] = {{"sigma_a", sc.motion.sigma_a},
                      {"sigma_v", sc.motion.sigma_v},
                      {"dt", sc.motion.dt}};
    root["surface_height"] = sc.surface_height;
    root["reflection_gain"] = sc.reflection_gain;

    root["luminaires"] = json::array();
    for (const LuminaireSpec& lum : sc.luminaires) {
        root["luminaires"].push_back({{"id", lum.id},
                                      {"x", lum.x},
                                      {"y", lum.y},
                                      {"z", lum.z},
                                      {"f_full", lum.f_full},
                                      {"r", lum.r},
                                      {"lambertian_order", lum.lambertian_order}});
    }

    root["sensors"] = json::array();
    for (const SensorSpec& s : sc.sensors) {
        root["sensors"].push_back({{"id", s.id},
                                   {"x", s.x},
                                   {"y", s.y},
                                   {"direction_deg", std::atan2(s.dir_y, s.dir_x) * 180.0 / M_PI},
                                   {"view_angle_deg", s.view_angle * 180.0 / M_PI},
                                   {"radius", s.radius},
                                   {"p_d_moving", s.p_d_moving},
                                   {"p_d_static", s.p_d_static},
                                   {"lambda", s.lambda},
                                   {"beta", s.beta},
                                   {"p_false_alarm", s.p_false_alarm}});
    }

    root["illumination_sensors"] = json::array();
    for (const IlluminationSensorSpec& s : sc.illumination_sensors) {
        root["illumination_sensors"].push_back({{"id", s.id}, {"x", s.x}, {"y", s.y}});
    }

    if (!sc.individual_pairing.empty()) {
        json pairing = json::object();
        for (std::size_t l = 0; l < sc.luminaires.size(); ++l) {
            pairing[sc.luminaires[l].id] =
                sc.sensors[static_cast<std::size_t>(sc.individual_pairing[l])].id;
        }
        root["individual_pairing"] = std::move(pairing);
    }

    root["requirement"] = {{"f_min", sc.f_min}};
    root["control"] = {
        {"th_c", sc.th_c},
        {"delay_seconds", sc.delay_seconds},
        {"margin_lux", sc.margin_lux},
        {"overhead_power_w", sc.power.c_s},
        {"onoff_mode", sc.onoff_mode == OnOffMode::exhaustive ? "exhaustive" : "greedy"}};

    json walk;
    walk["mode"] = sc.walk_mode == WalkMode::waypoints ? "waypoints" : "random";
    walk["speed"] = sc.walk_speed;
    walk["waypoints"] = json::array();
    for (const Waypoint& w : sc.waypoints) {
        walk["waypoints"].push_back({{"x", w.x}, {"y", w.y}, {"dwell_steps", w.dwell_steps}});
    }
    walk["start"] = {{"x", sc.start.x}, {"y", sc.start.y}};
    root["walk"] = std::move(walk);

    root["duration_steps"] = sc.duration_steps;

    json env;
    env["constant_lux"] = sc.environment.constant;
    if (!sc.environment.table.empty()) env["table"] = sc.environment.table;
    root["environment"] = std::move(env);

    return root.dump(2) + "\n";
}

bool scenario_equivalent(const Scenario& a, const Scenario& b, double tol) {
    auto close = [tol](double x, double y) { return std::abs(x - y) <= tol; };

    if (a.name != b.name) return false;
    if (!close(a.layout.width, b.layout.width) || !close(a.layout.depth, b.layout.depth)) {
        return false;
    }
    if (a.layout.invalid_regions.size() != b.layout.invalid_regions.size()) return false;
    for (std::size_t i = 0; i < a.layout.invalid_regions.size(); ++i) {
        const Rect& ra = a.layout.invalid_regions[i];
        const Rect& rb = b.layout.invalid_regions[i];
        if (!close(ra.x0, rb.x0) || !close(ra.y0, rb.y0) || !close(ra.x1, rb.x1) ||
            !close(ra.y1, rb.y1)) {
            return false;
        }
    }
    if (a.layout.static_zones.size() != b.layout.static_zones.size()) return false;
    for (std::size_t i = 0; i < a.layout.static_zones.size(); ++i) {
        const StaticZone& za = a.layout.static_zones[i];
        const StaticZone& zb = b.layout.static_zones[i];
        if (!close(za.rect.x0, zb.rect.x0) || !close(za.rect.y0, zb.rect.y0) ||
            !close(za.rect.x1, zb.rect.x1) || !close(za.rect.y1, zb.rect.y1) ||
            !close(za.prob, zb.prob)) {
            return false;
        }
    }
    if (!close(a.layout.static_default, b.layout.static_default)) return false;

    if (!close(a.grid.cell_size, b.grid.cell_size) || !close(a.grid.origin_x, b.grid.origin_x) ||
        !close(a.grid.origin_y, b.grid.origin_y)) {
        return false;
    }
    if (a.speed_levels.size() != b.speed_levels.size()) return false;
    for (std::size_t i = 0; i < a.speed_levels.size(); ++i) {
        if (!close(a.speed_levels[i], b.speed_levels[i])) return false;
    }
    if (!close(a.motion.sigma_a, b.motion.sigma_a) || !close(a.motion.sigma_v, b.motion.sigma_v) ||
        !close(a.motion.dt, b.motion.dt)) {
        return false;
    }
    if (!close(a.surface_height, b.surface_height) ||
        !close(a.reflection_gain, b.reflection_gain)) {
        return false;
    }

    if (a.luminaires.size() != b.luminaires.size()) return false;
    for (std::size_t i = 0; i < a.luminaires.size(); ++i) {
        const LuminaireSpec& la = a.luminaires[i];
        const LuminaireSpec& lb = b.luminaires[i];
        if (la.id != lb.id || !close(la.x, lb.x) || !close(la.y, lb.y) || !close(la.z, lb.z) ||
            !close(la.f_full, lb.f_full) || !close(la.r, lb.r) ||
            !close(la.lambertian_order, lb.lambertian_order)) {
            return false;
        }
    }

    if (a.sensors.size() != b.sensors.size()) return false;
    for (std::size_t i = 0; i < a.sensors.size(); ++i) {
        const SensorSpec& sa = a.sensors[i];
        const SensorSpec& sb = b.sensors[i];
        if (sa.id != sb.id || !close(sa.x, sb.x) || !close(sa.y, sb.y) ||
            !close(sa.dir_x, sb.dir_x) || !close(sa.dir_y, sb.dir_y) ||
            !close(sa.view_angle, sb.view_angle) || !close(sa.radius, sb.radius) ||
            !close(sa.p_d_moving, sb.p_d_moving) || !close(sa.p_d_static, sb.p_d_static) ||
            !close(sa.lambda, sb.lambda) || !close(sa.beta, sb.beta) ||
            !close(sa.p_false_alarm, sb.p_false_alarm)) {
            return false;
        }
    }

    if (a.illumination_sensors.size() != b.illumination_sensors.size()) return false;
    for (std::size_t i = 0; i < a.illumination_sensors.size(); ++i) {
        const IlluminationSensorSpec& sa = a.illumination_sensors[i];
        const IlluminationSensorSpec& sb = b.illumination_sensors[i];
        if (sa.id != sb.id || !close(sa.x, sb.x) || !close(sa.y, sb.y)) return false;
    }
    if (a.individual_pairing != b.individual_pairing) return false;

    if (!close(a.f_min, b.f_min) || !close(a.th_c, b.th_c) ||
        !close(a.delay_seconds, b.delay_seconds) || !close(a.margin_lux, b.margin_lux) ||
        !close(a.power.c_s, b.power.c_s) || a.onoff_mode != b.onoff_mode) {
        return false;
    }

    if (a.walk_mode != b.walk_mode || !close(a.walk_speed, b.walk_speed)) return false;
    if (a.waypoints.size() != b.waypoints.size()) return false;
    for (std::size_t i = 0; i < a.waypoints.size(); ++i) {
        if (!close(a.waypoints[i].x, b.waypoints[i].x) ||
            !close(a.waypoints[i].y, b.waypoints[i].y) ||
            a.waypoints[i].dwell_steps != b.waypoints[i].dwell_steps) {
            return false;
        }
    }
    if (!close(a.start.x, b.start.x) || !close(a.start.y, b.start.y)) return false;
    if (a.duration_steps != b.duration_steps) return false;

    if (!close(a.environment.constant, b.environment.constant)) return false;
    if (a.environment.table.size() != b.environment.table.size()) return false;
    for (std::size_t t = 0; t < a.environment.table.size(); ++t) {
        if (a.environment.table[t].size() != b.environment.table[t].size()) return false;
        for (std::size_t s = 0; s < a.environment.table[t].size(); ++s) {
            if (!close(a.environment.table[t][s], b.environment.table[t][s])) return false;
        }
    }
    return true;
}

}  // namespace lumisim
