#ifndef LUMISIM_CONTROL_HPP
#define LUMISIM_CONTROL_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lumisim/lighting.hpp"

namespace lumisim {

// Illumination demand for one user: every cell in the region must reach
// f_min lux (LED plus environment), except where an override names its own
// level.
struct RequirementSpec {
    double f_min = 400.0;
    std::vector<int> region_cells;
    std::vector<std::pair<int, double>> overrides;  // cell -> f_min for that cell

    double f_min_at(int cell) const {
        for (const auto& [c, level] : overrides) {
            if (c == cell) return level;
        }
        return f_min;
    }
};

struct ControlCommand {
    std::vector<double> sw;  // per-luminaire level in [0,1]
    double power = 0.0;      // watts, overhead included
    bool feasible = false;
};

struct ControlOptions {
    // The optimization constraint is strict (illumination must exceed the
    // requirement net of environment light); it is closed by this margin.
    double margin_lux = 1.0;
    double feasibility_tol = 1e-9;
};

enum class OnOffMode { exhaustive, greedy };

// Environment illumination per grid cell, supplied by the caller.
using EnvLookup = std::function<double(int cell)>;

// Minimum-power ON/OFF subset. Exhaustive mode scans all 2^L switch vectors
// (L <= 20) and breaks power ties toward the lexicographically smallest
// vector; greedy mode switches on the best violation-reduction-per-watt
// light until feasible. Returns all-on with feasible=false when even the
// full system cannot meet the requirements.
ControlCommand optimize_onoff(std::span<const LuminaireSpec> lums,
                              std::span<const AttenuationField> fields,
                              const EnvLookup& env_at,
                              std::span<const RequirementSpec> reqs,
                              const SystemPowerConfig& cfg, OnOffMode mode,
                              const ControlOptions& options = {});

// Continuous relaxation of the same problem, solved exactly as a linear
// program; among minimum-power solutions the lexicographically smallest
// dimmer vector is returned. The result is re-verified by substitution.
ControlCommand optimize_dimmer(std::span<const LuminaireSpec> lums,
                               std::span<const AttenuationField> fields,
                               const EnvLookup& env_at,
                               std::span<const RequirementSpec> reqs,
                               const SystemPowerConfig& cfg,
                               const ControlOptions& options = {});

// Baseline: every light on while any sensor fired within the delay window.
ControlCommand batch_control(std::span<const LuminaireSpec> lums,
                             const SystemPowerConfig& cfg,
                             std::optional<double> seconds_since_any_detection,
                             double delay_seconds);

// Baseline: each light follows its own paired sensor's delay window.
ControlCommand individual_control(std::span<const LuminaireSpec> lums,
                                  const SystemPowerConfig& cfg,
                                  std::span<const std::optional<double>> seconds_since_detection,
                                  double delay_seconds);

// Ideal reference: the requirement region collapses to the user's true cell.
ControlCommand perfect_localization_control(std::span<const LuminaireSpec> lums,
                                            std::span<const AttenuationField> fields,
                                            const EnvLookup& env_at, int true_cell,
                                            double f_min, const SystemPowerConfig& cfg,
                                            OnOffMode mode,
                                            const ControlOptions& options = {});

}  // namespace lumisim

#endif  // LUMISIM_CONTROL_HPP
