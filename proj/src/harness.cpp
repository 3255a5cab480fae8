#include "lumisim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lumisim {

namespace {

// Deterministic constant-speed traversal of the scripted waypoint path.
class WaypointFollower {
public:
    WaypointFollower(const Scenario& sc)
        : waypoints_(sc.waypoints), speed_(sc.walk_speed), dt_(sc.motion.dt) {
        state_.x = waypoints_.front().x;
        state_.y = waypoints_.front().y;
        dwell_left_ = waypoints_.front().dwell_steps;
    }

    StateVector step() {
        if (dwell_left_ > 0) {
            --dwell_left_;
            state_.vx = 0.0;
            state_.vy = 0.0;
            return state_;
        }
        if (next_ >= waypoints_.size()) {
            state_.vx = 0.0;
            state_.vy = 0.0;
            return state_;
        }
        const Waypoint& target = waypoints_[next_];
        const double dx = target.x - state_.x;
        const double dy = target.y - state_.y;
        const double dist = std::hypot(dx, dy);
        const double reach = speed_ * dt_;
        StateVector prev = state_;
        if (dist <= reach + 1e-12) {
            state_.x = target.x;
            state_.y = target.y;
            dwell_left_ = target.dwell_steps;
            ++next_;
        } else {
            state_.x += dx / dist * reach;
            state_.y += dy / dist * reach;
        }
        state_.vx = (state_.x - prev.x) / dt_;
        state_.vy = (state_.y - prev.y) / dt_;
        return state_;
    }

private:
    const std::vector<Waypoint>& waypoints_;
    double speed_;
    double dt_;
    StateVector state_;
    std::size_t next_ = 1;
    int dwell_left_ = 0;
};

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

}  // namespace

SimContext::SimContext(Scenario sc) : scenario(std::move(sc)) {
    scenario.validate();
    space = build_state_space(scenario.layout, scenario.grid, scenario.speed_levels);
    kernel = build_transition_kernel(space, scenario.layout, scenario.motion);
    fields.reserve(scenario.luminaires.size());
    for (const LuminaireSpec& lum : scenario.luminaires) {
        fields.push_back(build_lambertian_field(lum, scenario.layout, scenario.grid,
                                                scenario.surface_height,
                                                scenario.reflection_gain));
    }
}

std::vector<TraceRecord> run_scenario(const SimContext& ctx, ControllerKind controller,
                                      std::uint64_t seed, std::ostream* posterior_out) {
    const Scenario& sc = ctx.scenario;
    if (controller == ControllerKind::individual && sc.individual_pairing.empty()) {
        throw std::invalid_argument("run_scenario: individual control needs a light/sensor pairing");
    }

    RngStream motion_rng = RngStream::derive(seed, 1);
    RngStream sensing_rng = RngStream::derive(seed, 2);

    const std::size_t n_lums = sc.luminaires.size();
    const std::size_t n_sensors = sc.sensors.size();

    ControlOptions options;
    options.margin_lux = sc.margin_lux;

    StateVector true_state;
    std::optional<WaypointFollower> follower;
    if (sc.walk_mode == WalkMode::waypoints) {
        follower.emplace(sc);
        true_state.x = sc.waypoints.front().x;
        true_state.y = sc.waypoints.front().y;
    } else {
        true_state.x = sc.start.x;
        true_state.y = sc.start.y;
    }

    LikelihoodField field = reset(ctx.space);
    std::vector<double> sw_prev(n_lums, 0.0);
    std::vector<int> last_fire_step(n_sensors, -1);

    std::vector<TraceRecord> trace;
    trace.reserve(static_cast<std::size_t>(sc.duration_steps));

    if (posterior_out) *posterior_out << "t,state_index,value\n";

    for (int t = 0; t < sc.duration_steps; ++t) {
        const StateVector prev_state = true_state;
        if (follower) {
            true_state = follower->step();
        } else {
            true_state = sample_next_state(prev_state, sc.motion, sc.layout, motion_rng,
                                           &ctx.space);
        }

        const MeasurementVector b =
            sample_measurements(sc.sensors, prev_state, true_state, t, sensing_rng);
        for (std::size_t k = 0; k < n_sensors; ++k) {
            if (b.bits[k]) last_fire_step[k] = t;
        }

        field = update(field, ctx.kernel, sc.sensors, b, ctx.space);
        if (posterior_out) {
            posterior_out->precision(12);
            for (std::size_t i = 0; i < field.values.size(); ++i) {
                if (field.values[i] > 1e-12) {
                    *posterior_out << t << "," << i << "," << field.values[i] << "\n";
                }
            }
        }

        const LocalizationResult est = localize(field, ctx.space, sc.th_c);
        const std::vector<std::size_t>& candidates = est.candidates;

        // Illumination sensors report the current light state; the controller
        // deduces the environment term by subtracting the modeled LED part.
        std::vector<double> readings(sc.illumination_sensors.size());
        for (std::size_t s = 0; s < readings.size(); ++s) {
            const int cell = sc.grid.cell_of(sc.layout, sc.illumination_sensors[s].x,
                                             sc.illumination_sensors[s].y);
            readings[s] = total_illumination(ctx.fields, sc.luminaires, sw_prev, cell) +
                          sc.environment.value(t, s);
        }
        const EnvLookup env_at = [&](int cell) {
            double x = 0.0, y = 0.0;
            sc.grid.cell_center(sc.layout, cell, x, y);
            return environment_illumination(sc.illumination_sensors, readings, ctx.fields,
                                            sc.luminaires, sw_prev, sc.layout, sc.grid, x, y);
        };

        auto age_of = [&](int last_step) -> std::optional<double> {
            if (last_step < 0) return std::nullopt;
            return (t - last_step) * sc.motion.dt;
        };

        const int true_cell = sc.grid.cell_of(sc.layout, true_state.x, true_state.y);

        ControlCommand command;
        switch (controller) {
            case ControllerKind::proposed:
            case ControllerKind::dimmer: {
                RequirementSpec req;
                req.f_min = sc.f_min;
                req.region_cells.reserve(candidates.size());
                for (std::size_t p : candidates) {
                    req.region_cells.push_back(ctx.space.pos_cell[p]);
                }
                const RequirementSpec reqs[] = {req};
                command = controller == ControllerKind::proposed
                              ? optimize_onoff(sc.luminaires, ctx.fields, env_at, reqs,
                                               sc.power, sc.onoff_mode, options)
                              : optimize_dimmer(sc.luminaires, ctx.fields, env_at, reqs,
                                                sc.power, options);
                break;
            }
            case ControllerKind::batch: {
                int newest = -1;
                for (int step : last_fire_step) newest = std::max(newest, step);
                command = batch_control(sc.luminaires, sc.power, age_of(newest),
                                        sc.delay_seconds);
                break;
            }
            case ControllerKind::individual: {
                std::vector<std::optional<double>> ages(n_lums);
                for (std::size_t l = 0; l < n_lums; ++l) {
                    ages[l] = age_of(last_fire_step[static_cast<std::size_t>(
                        sc.individual_pairing[l])]);
                }
                command = individual_control(sc.luminaires, sc.power, ages, sc.delay_seconds);
                break;
            }
            case ControllerKind::perfect: {
                command = perfect_localization_control(sc.luminaires, ctx.fields, env_at,
                                                       true_cell, sc.f_min, sc.power,
                                                       sc.onoff_mode, options);
                break;
            }
        }

        // Ground-truth illumination at the user: LED contribution under the
        // new command plus the scheduled environment light.
        const double led = total_illumination(ctx.fields, sc.luminaires, command.sw, true_cell);
        const std::size_t near = nearest_illumination_sensor(sc.illumination_sensors,
                                                             true_state.x, true_state.y);
        const double illumination = led + sc.environment.value(t, near);

        TraceRecord rec;
        rec.t = t;
        rec.true_state = true_state;
        rec.measurements = b;
        rec.mle_state = est.mle_state;
        rec.candidate_count = candidates.size();
        rec.power = command.power;
        rec.illumination = illumination;
        rec.satisfied = illumination >= sc.f_min;
        rec.command = std::move(command);
        sw_prev = rec.command.sw;
        trace.push_back(std::move(rec));
    }
    return trace;
}

std::vector<TraceRecord> run_scenario(const Scenario& sc, ControllerKind controller,
                                      std::uint64_t seed, std::ostream* posterior_out) {
    SimContext ctx(sc);
    return run_scenario(ctx, controller, seed, posterior_out);
}

MetricsSummary compute_metrics(
    const std::vector<std::pair<std::string, std::vector<TraceRecord>>>& per_controller,
    double f_min) {
    MetricsSummary summary;
    summary.batch_mean_power = std::numeric_limits<double>::quiet_NaN();

    for (const auto& [name, trace] : per_controller) {
        if (trace.empty()) throw std::invalid_argument("compute_metrics: empty trace");
        if (name == "batch") {
            std::vector<double> powers;
            powers.reserve(trace.size());
            for (const TraceRecord& r : trace) powers.push_back(r.power);
            summary.batch_mean_power = mean_of(powers);
        }
    }

    for (const auto& [name, trace] : per_controller) {
        ControllerStats stats;
        stats.controller = name;
        double power_sum = 0.0, illum_sum = 0.0, err_sum = 0.0;
        double illum_max = -std::numeric_limits<double>::infinity();
        double illum_min = std::numeric_limits<double>::infinity();
        std::size_t satisfied = 0;
        for (const TraceRecord& r : trace) {
            power_sum += r.power;
            illum_sum += r.illumination;
            illum_max = std::max(illum_max, r.illumination);
            illum_min = std::min(illum_min, r.illumination);
            if (r.illumination >= f_min) ++satisfied;
            err_sum += std::hypot(r.mle_state.x - r.true_state.x,
                                  r.mle_state.y - r.true_state.y);
        }
        const double n = static_cast<double>(trace.size());
        stats.mean_power = power_sum / n;
        stats.satisfaction = static_cast<double>(satisfied) / n;
        stats.mean_illumination = illum_sum / n;
        stats.max_illumination = illum_max;
        stats.min_illumination = illum_min;
        stats.mean_localization_error = err_sum / n;
        stats.saving_rate_vs_batch = 1.0 - stats.mean_power / summary.batch_mean_power;
        summary.rows.push_back(std::move(stats));
    }
    return summary;
}

std::vector<SweepResult> grid_sweep(const Scenario& base, const std::vector<double>& cell_sizes,
                                    int runs, std::uint64_t seed, int steps) {
    if (runs < 1 || steps < 1) {
        throw std::invalid_argument("grid_sweep: runs and steps must be >= 1");
    }
    std::vector<SweepResult> results;
    for (double size : cell_sizes) {
        if (!(size > 0.0)) throw std::invalid_argument("grid_sweep: cell size must be > 0");
        Scenario sc = base;
        sc.grid.cell_size = size;
        sc.walk_mode = WalkMode::random_walk;
        if (!is_valid_position(sc.layout, sc.start.x, sc.start.y) && !base.waypoints.empty()) {
            sc.start = base.waypoints.front();
        }
        sc.duration_steps = steps;

        StateSpace space = build_state_space(sc.layout, sc.grid, sc.speed_levels);
        TransitionKernel kernel = build_transition_kernel(space, sc.layout, sc.motion);

        SweepResult result;
        result.cell_size = size;
        for (int run = 0; run < runs; ++run) {
            // Stream ids are shared across sizes so run r walks the same
            // trajectory and sees the same detections at every resolution.
            RngStream motion_rng = RngStream::derive(seed, 1000 + static_cast<std::uint64_t>(run));
            RngStream sensing_rng = RngStream::derive(seed, 2000 + static_cast<std::uint64_t>(run));

            StateVector true_state;
            true_state.x = sc.start.x;
            true_state.y = sc.start.y;
            LikelihoodField field = reset(space);
            double err_sum = 0.0;
            for (int t = 0; t < steps; ++t) {
                const StateVector prev = true_state;
                true_state = sample_next_state(prev, sc.motion, sc.layout, motion_rng,
                                               &space);
                const MeasurementVector b =
                    sample_measurements(sc.sensors, prev, true_state, t, sensing_rng);
                field = update(field, kernel, sc.sensors, b, space);
                const LocalizationResult est = estimate(field, space);
                err_sum += std::hypot(est.mle_state.x - true_state.x,
                                      est.mle_state.y - true_state.y);
            }
            result.per_run_error.push_back(err_sum / steps);
        }
        result.mean_error = mean_of(result.per_run_error);
        results.push_back(std::move(result));
    }
    return results;
}

std::string trace_to_csv(const SimContext& ctx, ControllerKind controller, std::uint64_t seed,
                         const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    out.precision(12);
    out << "# scenario " << ctx.scenario.name << " controller " << controller_name(controller)
        << " seed " << seed << "\n";
    out << "t,true_x,true_y,true_vx,true_vy,bits,mle_x,mle_y,mle_vx,mle_vy,candidate_count";
    for (const LuminaireSpec& lum : ctx.scenario.luminaires) out << ",sw_" << lum.id;
    out << ",power_w,feasible,illumination_lux,satisfied\n";
    for (const TraceRecord& r : trace) {
        out << r.t << "," << r.true_state.x << "," << r.true_state.y << ","
            << r.true_state.vx << "," << r.true_state.vy << ",";
        for (auto bit : r.measurements.bits) out << static_cast<int>(bit);
        out << "," << r.mle_state.x << "," << r.mle_state.y << "," << r.mle_state.vx << ","
            << r.mle_state.vy << "," << r.candidate_count;
        for (double sw : r.command.sw) out << "," << sw;
        out << "," << r.power << "," << (r.command.feasible ? 1 : 0) << "," << r.illumination
            << "," << (r.satisfied ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string metrics_to_csv(const MetricsSummary& summary, std::uint64_t seed) {
    std::ostringstream out;
    out.precision(12);
    out << "# seed " << seed << "\n";
    out << "controller,mean_power_w,saving_rate_vs_batch,satisfaction,"
           "mean_illumination_lux,max_illumination_lux,min_illumination_lux,"
           "mean_localization_error_m\n";
    for (const ControllerStats& s : summary.rows) {
        out << s.controller << "," << s.mean_power << "," << s.saving_rate_vs_batch << ","
            << s.satisfaction << "," << s.mean_illumination << "," << s.max_illumination << ","
            << s.min_illumination << "," << s.mean_localization_error << "\n";
    }
    return out.str();
}

std::string metrics_to_text(const MetricsSummary& summary) {
    std::ostringstream out;
    out.precision(4);
    for (const ControllerStats& s : summary.rows) {
        out << s.controller << ": mean power " << s.mean_power << " W";
        if (std::isfinite(s.saving_rate_vs_batch)) {
            out << " (saving vs batch " << s.saving_rate_vs_batch * 100.0 << "%)";
        }
        out << ", satisfaction " << s.satisfaction * 100.0 << "%"
            << ", illumination mean/max/min " << s.mean_illumination << "/"
            << s.max_illumination << "/" << s.min_illumination << " lux"
            << ", localization error " << s.mean_localization_error << " m\n";
    }
    return out.str();
}

std::string sweep_to_csv(const std::vector<SweepResult>& results, std::uint64_t seed) {
    std::ostringstream out;
    out.precision(12);
    out << "# seed " << seed << "\n";
    out << "cell_size_m,run,mean_error_m\n";
    for (const SweepResult& r : results) {
        for (std::size_t run = 0; run < r.per_run_error.size(); ++run) {
            out << r.cell_size << "," << run << "," << r.per_run_error[run] << "\n";
        }
        out << r.cell_size << ",all," << r.mean_error << "\n";
    }
    return out.str();
}

}  // namespace lumisim
