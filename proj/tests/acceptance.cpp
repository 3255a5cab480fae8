// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run on the shipped office scenario plus synthetic
// oracle instances; every tolerance is pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "lumisim/config.hpp"
#include "lumisim/harness.hpp"

using namespace lumisim;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RunSet {
    std::vector<std::vector<TraceRecord>> proposed;
    std::vector<std::vector<TraceRecord>> individual;
    std::vector<std::vector<TraceRecord>> batch;
    std::vector<std::vector<TraceRecord>> perfect;
};

// Criterion 1: proposed-vs-batch power saving on the scripted office walk.
void criterion_power_saving(const SimContext& ctx) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = 1;
    auto proposed = run_scenario(ctx, ControllerKind::proposed, seed);
    auto batch = run_scenario(ctx, ControllerKind::batch, seed);
    const auto metrics = compute_metrics(
        {{"proposed", proposed}, {"batch", batch}}, ctx.scenario.f_min);

    double saving = 0.0, batch_power = 0.0, proposed_power = 0.0;
    for (const auto& row : metrics.rows) {
        if (row.controller == "proposed") {
            saving = row.saving_rate_vs_batch;
            proposed_power = row.mean_power;
        }
        if (row.controller == "batch") batch_power = row.mean_power;
    }
    const double secs = elapsed_seconds(start);
    const bool steps_ok = proposed.size() >= 300;
    const bool band_ok = saving >= 0.40 && saving <= 0.75;
    const bool batch_ok = batch_power > 600.0 && batch_power <= 700.0;
    const bool time_ok = secs < 30.0;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "saving %.1f%% (band 40-75%%), proposed %.1f W, batch %.1f W, %zu steps, "
                  "%.1f s (limit 30)",
                  saving * 100.0, proposed_power, batch_power, proposed.size(), secs);
    report(1, "power saving vs batch", steps_ok && band_ok && batch_ok && time_ok, detail);
}

// Criterion 2: proposed satisfies 400 lux always; individual control does not.
void criterion_satisfaction(const SimContext& ctx, const RunSet& runs) {
    std::size_t proposed_sat = 0, proposed_total = 0;
    std::size_t individual_sat = 0, individual_total = 0;
    for (const auto& trace : runs.proposed) {
        for (const TraceRecord& r : trace) {
            proposed_total += 1;
            proposed_sat += r.illumination >= ctx.scenario.f_min ? 1 : 0;
        }
    }
    for (const auto& trace : runs.individual) {
        for (const TraceRecord& r : trace) {
            individual_total += 1;
            individual_sat += r.illumination >= ctx.scenario.f_min ? 1 : 0;
        }
    }
    const bool proposed_ok = proposed_sat == proposed_total;
    const bool individual_ok = individual_sat < individual_total;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "proposed %zu/%zu steps at >=400 lux over %zu runs; individual %.1f%% (< "
                  "100%% required)",
                  proposed_sat, proposed_total, runs.proposed.size(),
                  100.0 * static_cast<double>(individual_sat) /
                      static_cast<double>(individual_total));
    report(2, "illumination satisfaction", proposed_ok && individual_ok, detail);
}

// Criterion 3: per-step dominance perfect <= proposed (feasible) <= batch
// whenever batch sees the user, on every seeded run.
void criterion_dominance(const RunSet& runs) {
    std::size_t violations = 0, checked = 0;
    double proposed_sum = 0.0, perfect_sum = 0.0;
    for (std::size_t run = 0; run < runs.proposed.size(); ++run) {
        const auto& proposed = runs.proposed[run];
        const auto& perfect = runs.perfect[run];
        const auto& batch = runs.batch[run];
        for (std::size_t t = 0; t < proposed.size(); ++t) {
            proposed_sum += proposed[t].power;
            perfect_sum += perfect[t].power;
            const bool batch_on = batch[t].power > 0.0;
            if (!batch_on || !proposed[t].command.feasible) continue;
            ++checked;
            if (perfect[t].power > proposed[t].power + 1e-9 ||
                proposed[t].power > batch[t].power + 1e-9) {
                ++violations;
            }
        }
    }
    const double ratio = proposed_sum / perfect_sum;
    const bool ratio_ok = ratio >= 1.0 && ratio <= 2.5;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "%zu violations over %zu checked steps; proposed/perfect mean-power ratio "
                  "%.2f (band 1.0-2.5)",
                  violations, checked, ratio);
    report(3, "controller dominance chain", violations == 0 && ratio_ok, detail);
}

// Criterion 4: localization error band at 0.3 m cells and the grid-size trend.
void criterion_localization(const Scenario& office) {
    const auto start = std::chrono::steady_clock::now();
    const int runs = 50;
    const auto results = grid_sweep(office, {0.3, 0.9}, runs, 42, 120);
    const double err_fine = results[0].mean_error;
    const double err_coarse = results[1].mean_error;

    int coarse_wins = 0;
    for (int r = 0; r < runs; ++r) {
        if (results[1].per_run_error[static_cast<std::size_t>(r)] >=
            results[0].per_run_error[static_cast<std::size_t>(r)]) {
            ++coarse_wins;
        }
    }
    // One-sided sign test: P(X >= 32 | n=50, p=0.5) = 0.0325 < 0.05.
    const int sign_threshold = 32;

    const double secs = elapsed_seconds(start);
    const bool band_ok = err_fine >= 0.5 && err_fine <= 1.3;
    const bool trend_ok = coarse_wins >= sign_threshold;
    const bool time_ok = secs < 120.0;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "mean error %.3f m at 0.3 m cells (band 0.5-1.3), %.3f m at 0.9 m; "
                  "coarse>=fine on %d/%d seeds (need >=%d), %.1f s (limit 120)",
                  err_fine, err_coarse, coarse_wins, runs, sign_threshold, secs);
    report(4, "localization error", band_ok && trend_ok && time_ok, detail);
}

// --- Criterion 5 machinery: instances and the independent oracle. ---

struct OptInstance {
    std::vector<LuminaireSpec> lums;
    std::vector<AttenuationField> fields;
    std::vector<RequirementSpec> reqs;
    std::vector<double> env;
    SystemPowerConfig cfg;
};

OptInstance random_office_instance(RngStream& rng) {
    RoomLayout room;
    room.width = 6.0;
    room.depth = 4.0;
    GridSpec grid;
    grid.cell_size = 0.5;
    const int nx = grid.cells_x(room);
    const int ny = grid.cells_y(room);

    OptInstance inst;
    const int n = 4 + static_cast<int>(rng.uniform01() * 7);  // 4..10 lights
    for (int l = 0; l < n; ++l) {
        LuminaireSpec lum;
        lum.id = "L" + std::to_string(l);
        lum.x = rng.uniform(0.5, 5.5);
        lum.y = rng.uniform(0.5, 3.5);
        lum.z = 2.5;
        lum.f_full = rng.uniform(4000.0, 9000.0);
        lum.r = 100.0 / lum.f_full;  // identical full-on power, as deployed
        lum.lambertian_order = 1.0;
        inst.fields.push_back(build_lambertian_field(lum, room, grid, 0.7, 0.9));
        inst.lums.push_back(std::move(lum));
    }
    inst.env.resize(static_cast<std::size_t>(grid.cell_count(room)));
    for (double& e : inst.env) e = rng.uniform(0.0, 150.0);

    RequirementSpec req;
    req.f_min = rng.uniform(300.0, 500.0);
    const int cx = static_cast<int>(rng.uniform(1.0, nx - 2.0));
    const int cy = static_cast<int>(rng.uniform(1.0, ny - 2.0));
    const int span = rng.bernoulli(0.5) ? 2 : 3;
    for (int dy = 0; dy < span; ++dy) {
        for (int dx = 0; dx < span; ++dx) {
            if (rng.uniform01() < 0.85) {
                req.region_cells.push_back(std::min(cy + dy, ny - 1) * nx +
                                           std::min(cx + dx, nx - 1));
            }
        }
    }
    if (req.region_cells.empty()) req.region_cells.push_back(cy * nx + cx);
    inst.reqs.push_back(std::move(req));
    inst.cfg.c_s = 0.0;
    return inst;
}

// Brute force reimplementation straight from the constraint definition.
ControlCommand oracle_onoff(const OptInstance& inst, double margin, double tol) {
    const std::size_t n = inst.lums.size();
    struct Need {
        int cell;
        double level;
    };
    std::vector<Need> needs;
    for (const RequirementSpec& req : inst.reqs) {
        for (int cell : req.region_cells) {
            const double residual = req.f_min - inst.env[static_cast<std::size_t>(cell)];
            if (residual > 0.0) needs.push_back({cell, residual + margin});
        }
    }
    bool found = false;
    double best_power = 0.0;
    std::vector<double> best_sw;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<double> sw(n, 0.0);
        for (std::size_t l = 0; l < n; ++l) sw[l] = (mask >> l) & 1u ? 1.0 : 0.0;
        bool ok = true;
        for (const Need& need : needs) {
            double led = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                led += sw[l] * inst.lums[l].f_full * inst.fields[l].at(need.cell);
            }
            if (led < need.level - tol) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        double power = inst.cfg.c_s;
        for (std::size_t l = 0; l < n; ++l) power += sw[l] * inst.lums[l].full_power();
        bool better = !found || power < best_power - 1e-9;
        if (!better && found && power < best_power + 1e-9) {
            for (std::size_t l = 0; l < n; ++l) {
                if (sw[l] != best_sw[l]) {
                    better = sw[l] < best_sw[l];
                    break;
                }
            }
        }
        if (better) {
            found = true;
            best_power = power;
            best_sw = sw;
        }
    }
    ControlCommand cmd;
    if (!found) {
        cmd.sw.assign(n, 1.0);
        cmd.power = inst.cfg.c_s;
        for (const auto& lum : inst.lums) cmd.power += lum.full_power();
        cmd.feasible = false;
    } else {
        cmd.sw = best_sw;
        cmd.power = best_power;
        cmd.feasible = true;
    }
    return cmd;
}

void criterion_optimizer_oracle() {
    RngStream rng(20240);
    const ControlOptions options;
    int mismatches = 0, dimmer_violations = 0, feasible_count = 0;
    double worst_ratio = 1.0;
    std::vector<double> ratios;
    for (int trial = 0; trial < 100; ++trial) {
        const OptInstance inst = random_office_instance(rng);
        const EnvLookup env = [&inst](int cell) {
            return inst.env[static_cast<std::size_t>(cell)];
        };
        const ControlCommand expected =
            oracle_onoff(inst, options.margin_lux, options.feasibility_tol);
        const ControlCommand got = optimize_onoff(inst.lums, inst.fields, env, inst.reqs,
                                                  inst.cfg, OnOffMode::exhaustive, options);
        if (got.feasible != expected.feasible || got.sw != expected.sw ||
            std::abs(got.power - expected.power) > 1e-9) {
            ++mismatches;
        }
        const ControlCommand dim =
            optimize_dimmer(inst.lums, inst.fields, env, inst.reqs, inst.cfg, options);
        if (expected.feasible) {
            ++feasible_count;
            if (!dim.feasible || dim.power > expected.power + 1e-6) ++dimmer_violations;
            const ControlCommand greedy = optimize_onoff(
                inst.lums, inst.fields, env, inst.reqs, inst.cfg, OnOffMode::greedy, options);
            const double ratio = greedy.power / expected.power;
            ratios.push_back(ratio);
            worst_ratio = std::max(worst_ratio, ratio);
        }
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios.empty() ? 1.0 : ratios[ratios.size() / 2];
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "exhaustive mismatches %d/100; dimmer>binary %d/%d; greedy/exhaustive "
                  "median %.3f worst %.3f (limit 1.25)",
                  mismatches, dimmer_violations, feasible_count, median, worst_ratio);
    report(5, "optimizer oracle",
           mismatches == 0 && dimmer_violations == 0 && worst_ratio <= 1.25, detail);
}

// --- Criterion 6: sequence-enumeration Bayes oracle. ---

double oracle_emission(const StateSpace& space, std::span<const SensorSpec> sensors,
                       std::size_t from, std::size_t to, const MeasurementVector& b) {
    const bool moving = from != to;
    const std::size_t p = space.position_of(to);
    double prod = 1.0;
    for (std::size_t k = 0; k < sensors.size(); ++k) {
        prod *= detection_likelihood(sensors[k], space.pos_x[p], space.pos_y[p], moving,
                                     b.bits[k]);
    }
    return prod;
}

void oracle_walk(const StateSpace& space, const TransitionKernel& kernel,
                 std::span<const SensorSpec> sensors,
                 const std::vector<MeasurementVector>& seq, std::size_t t, std::size_t state,
                 double weight, std::vector<double>& out) {
    if (weight == 0.0) return;
    if (t == seq.size()) {
        out[state] += weight;
        return;
    }
    for (std::size_t next = 0; next < space.state_count(); ++next) {
        const double p = kernel.prob(state, next);
        if (p == 0.0) continue;
        oracle_walk(space, kernel, sensors, seq, t + 1, next,
                    weight * p * oracle_emission(space, sensors, state, next, seq[t]), out);
    }
}

void criterion_bayes_oracle() {
    RngStream rng(606);
    double worst = 0.0;
    std::size_t checks = 0;
    for (int trial = 0; trial < 6; ++trial) {
        RoomLayout room;
        room.width = trial % 2 == 0 ? 2.0 : 3.0;
        room.depth = 2.0;
        if (trial % 3 == 0) room.static_zones.push_back({{0.0, 0.0, 2.0, 1.0}, 0.7});
        GridSpec grid;
        grid.cell_size = 1.0;
        const std::vector<double> speeds =
            trial % 2 == 0 ? std::vector<double>{0.0, 1.0} : std::vector<double>{0.0};
        const StateSpace space = build_state_space(room, grid, speeds);
        if (space.state_count() > 50) continue;
        const MotionParams params{rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.6), 1.0};
        const TransitionKernel kernel = build_transition_kernel(space, room, params);

        std::vector<SensorSpec> sensors;
        for (int s = 0; s < 2; ++s) {
            SensorSpec spec;
            spec.id = "S" + std::to_string(s);
            spec.x = rng.uniform(0.0, room.width);
            spec.y = rng.uniform(0.0, room.depth);
            const double ang = rng.uniform(0.0, 2.0 * M_PI);
            spec.dir_x = std::cos(ang);
            spec.dir_y = std::sin(ang);
            spec.view_angle = rng.uniform(1.0, 2.5);
            spec.radius = rng.uniform(0.5, 1.5);
            spec.p_d_moving = 0.8;
            spec.p_d_static = 0.1;
            spec.lambda = 4.0;
            spec.beta = 2.0;
            spec.p_false_alarm = 0.0;
            sensors.push_back(spec);
        }

        // Measurements from a simulated occupant walking the kernel itself,
        // so every sequence has nonzero likelihood.
        const int horizon = trial % 2 == 0 ? 4 : 5;
        std::size_t truth = static_cast<std::size_t>(rng.uniform01() *
                                                     static_cast<double>(space.state_count()));
        std::vector<MeasurementVector> seq;
        for (int t = 0; t < horizon; ++t) {
            const double u = rng.uniform01();
            double acc = 0.0;
            std::size_t next = truth;
            for (std::size_t k = kernel.row_ptr[truth]; k < kernel.row_ptr[truth + 1]; ++k) {
                acc += kernel.val[k];
                if (u <= acc) {
                    next = kernel.col[k];
                    break;
                }
            }
            const bool moving = next != truth;
            truth = next;
            const std::size_t p = space.position_of(truth);
            MeasurementVector b;
            b.t = t;
            for (const SensorSpec& sensor : sensors) {
                const double p1 =
                    detection_likelihood(sensor, space.pos_x[p], space.pos_y[p], moving, 1);
                b.bits.push_back(rng.bernoulli(p1) ? 1 : 0);
            }
            seq.push_back(std::move(b));
        }

        std::vector<double> expected(space.state_count(), 0.0);
        const double prior = 1.0 / static_cast<double>(space.state_count());
        for (std::size_t j0 = 0; j0 < space.state_count(); ++j0) {
            oracle_walk(space, kernel, sensors, seq, 0, j0, prior, expected);
        }
        double total = 0.0;
        for (double v : expected) total += v;
        if (total <= 0.0) continue;
        for (double& v : expected) v /= total;

        LikelihoodField field = reset(space);
        for (const MeasurementVector& b : seq) {
            field = update(field, kernel, sensors, b, space);
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            worst = std::max(worst, std::abs(field.values[i] - expected[i]));
            ++checks;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "max |update - enumeration| = %.2e over %zu state checks (limit 1e-10)",
                  worst, checks);
    report(6, "Bayes recursion oracle", checks >= 100 && worst < 1e-10, detail);
}

// --- Criterion 7: model invariants and determinism. ---

void criterion_invariants(const SimContext& ctx) {
    bool kernel_ok = true;
    for (std::size_t i = 0; i < ctx.kernel.state_count(); ++i) {
        if (std::abs(ctx.kernel.row_sum(i) - 1.0) > 1e-9) kernel_ok = false;
        for (std::size_t k = ctx.kernel.row_ptr[i]; k < ctx.kernel.row_ptr[i + 1]; ++k) {
            if (ctx.kernel.val[k] < 0.0) kernel_ok = false;
            const StateVector dest = ctx.space.state(ctx.kernel.col[k]);
            if (!is_valid_position(ctx.scenario.layout, dest.x, dest.y)) kernel_ok = false;
        }
    }

    bool complement_ok = true;
    RngStream rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        const SensorSpec& s =
            ctx.scenario.sensors[static_cast<std::size_t>(trial) % ctx.scenario.sensors.size()];
        const double x = rng.uniform(0.0, ctx.scenario.layout.width);
        const double y = rng.uniform(0.0, ctx.scenario.layout.depth);
        const bool moving = trial % 2 == 0;
        if (detection_likelihood(s, x, y, moving, 1) + detection_likelihood(s, x, y, moving, 0) !=
            1.0) {
            complement_ok = false;
        }
    }

    bool linear_ok = true;
    const std::size_t n_lums = ctx.scenario.luminaires.size();
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(n_lums), b(n_lums), mix(n_lums);
        const double alpha = rng.uniform01();
        for (std::size_t l = 0; l < n_lums; ++l) {
            a[l] = rng.uniform01();
            b[l] = rng.uniform01();
            mix[l] = alpha * a[l] + (1.0 - alpha) * b[l];
        }
        const int cell =
            static_cast<int>(rng.uniform01() * ctx.scenario.grid.cell_count(ctx.scenario.layout));
        const double lhs = total_illumination(ctx.fields, ctx.scenario.luminaires, mix, cell);
        const double rhs =
            alpha * total_illumination(ctx.fields, ctx.scenario.luminaires, a, cell) +
            (1.0 - alpha) * total_illumination(ctx.fields, ctx.scenario.luminaires, b, cell);
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) linear_ok = false;
    }

    const auto trace_a = run_scenario(ctx, ControllerKind::proposed, 991);
    const auto trace_b = run_scenario(ctx, ControllerKind::proposed, 991);
    const std::string csv_a = trace_to_csv(ctx, ControllerKind::proposed, 991, trace_a);
    const std::string csv_b = trace_to_csv(ctx, ControllerKind::proposed, 991, trace_b);
    const bool deterministic = csv_a == csv_b;

    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "kernel rows %s, likelihood complements %s, superposition %s, determinism %s",
                  kernel_ok ? "ok" : "BAD", complement_ok ? "ok" : "BAD",
                  linear_ok ? "ok" : "BAD", deterministic ? "ok" : "BAD");
    report(7, "model invariants", kernel_ok && complement_ok && linear_ok && deterministic,
           detail);
}

}  // namespace

int main() {
    const Scenario office = default_office_scenario();
    const SimContext ctx(office);

    criterion_power_saving(ctx);

    RunSet runs;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        runs.proposed.push_back(run_scenario(ctx, ControllerKind::proposed, seed));
        runs.individual.push_back(run_scenario(ctx, ControllerKind::individual, seed));
        runs.batch.push_back(run_scenario(ctx, ControllerKind::batch, seed));
        runs.perfect.push_back(run_scenario(ctx, ControllerKind::perfect, seed));
    }
    criterion_satisfaction(ctx, runs);
    criterion_dominance(runs);
    criterion_localization(office);
    criterion_optimizer_oracle();
    criterion_bayes_oracle();
    criterion_invariants(ctx);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
