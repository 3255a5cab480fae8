#ifndef LUMISIM_HARNESS_HPP
#define LUMISIM_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lumisim/localization.hpp"
#include "lumisim/scenario.hpp"

namespace lumisim {

// One closed-loop step of a run.
struct TraceRecord {
    int t = 0;
    StateVector true_state;
    MeasurementVector measurements;
    StateVector mle_state;
    std::size_t candidate_count = 0;
    ControlCommand command;
    double power = 0.0;         // watts, equals command.power
    double illumination = 0.0;  // lux at the true position, environment included
    bool satisfied = false;     // illumination >= f_min
};

struct ControllerStats {
    std::string controller;
    double mean_power = 0.0;
    double saving_rate_vs_batch = 0.0;  // NaN when no batch reference exists
    double satisfaction = 0.0;
    double mean_illumination = 0.0;
    double max_illumination = 0.0;
    double min_illumination = 0.0;
    double mean_localization_error = 0.0;  // meters, MLE vs true position
};

struct MetricsSummary {
    std::vector<ControllerStats> rows;
    double batch_mean_power = 0.0;  // NaN when batch absent
};

// Precomputed per-scenario machinery, shareable read-only across runs.
struct SimContext {
    Scenario scenario;
    StateSpace space;
    TransitionKernel kernel;
    std::vector<AttenuationField> fields;

    explicit SimContext(Scenario sc);
};

// Executes one scenario with one controller. Deterministic for a given seed.
// When posterior_out is set, the per-step posterior is streamed to it as
// "t,state_index,value" rows.
std::vector<TraceRecord> run_scenario(const SimContext& ctx, ControllerKind controller,
                                      std::uint64_t seed,
                                      std::ostream* posterior_out = nullptr);
std::vector<TraceRecord> run_scenario(const Scenario& sc, ControllerKind controller,
                                      std::uint64_t seed,
                                      std::ostream* posterior_out = nullptr);

MetricsSummary compute_metrics(
    const std::vector<std::pair<std::string, std::vector<TraceRecord>>>& per_controller,
    double f_min);

// Localization-error sweep over grid resolutions. Each run is a free random
// walk of `steps` steps (the walk itself does not depend on the grid, so run
// r sees the same trajectory and measurements at every cell size).
struct SweepResult {
    double cell_size = 0.0;
    std::vector<double> per_run_error;  // mean error per run, meters
    double mean_error = 0.0;
};

std::vector<SweepResult> grid_sweep(const Scenario& base, const std::vector<double>& cell_sizes,
                                    int runs, std::uint64_t seed, int steps);

// CSV / text output. Every header embeds the seed for traceability.
std::string trace_to_csv(const SimContext& ctx, ControllerKind controller, std::uint64_t seed,
                         const std::vector<TraceRecord>& trace);
std::string metrics_to_csv(const MetricsSummary& summary, std::uint64_t seed);
std::string metrics_to_text(const MetricsSummary& summary);
std::string sweep_to_csv(const std::vector<SweepResult>& results, std::uint64_t seed);

}  // namespace lumisim

#endif  // LUMISIM_HARNESS_HPP
