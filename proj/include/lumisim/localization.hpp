#ifndef LUMISIM_LOCALIZATION_HPP
#define LUMISIM_LOCALIZATION_HPP

#include <span>
#include <vector>

#include "lumisim/geometry.hpp"
#include "lumisim/motion.hpp"
#include "lumisim/sensing.hpp"

namespace lumisim {

// Accumulated likelihood over all discrete states, kept normalized to sum 1
// after every update so long horizons cannot underflow.
struct LikelihoodField {
    std::vector<double> values;  // one per state index
    int t = 0;
    bool last_underflow = false;  // set when an update had to reinitialize
    std::size_t underflow_count = 0;
};

struct LocalizationResult {
    StateVector mle_state;
    std::size_t mle_index = 0;
    double peak_value = 0.0;               // position marginal at the MLE position
    std::vector<std::size_t> candidates;   // position indices above threshold
};

// Uniform field at t = 0.
LikelihoodField reset(const StateSpace& space);

// One recursive Bayes step: for every destination state, the static
// hypothesis (same state, static detection profile) and the moving
// hypotheses (all other sources, moving detection profile) are combined
// through the transition kernel and the per-sensor measurement likelihoods,
// then the field is renormalized. Sensors are conditionally independent.
LikelihoodField update(const LikelihoodField& field, const TransitionKernel& kernel,
                       std::span<const SensorSpec> sensors, const MeasurementVector& b,
                       const StateSpace& space);

// Argmax state; ties break to the lowest state index. Candidates are left
// empty here; localize() fills the complete result.
LocalizationResult estimate(const LikelihoodField& field, const StateSpace& space);

// estimate + candidate_set in one result.
LocalizationResult localize(const LikelihoodField& field, const StateSpace& space,
                            double th_c);

// Per-position marginals (sum over velocities), same normalization as the field.
std::vector<double> position_marginals(const LikelihoodField& field, const StateSpace& space);

// Position indices whose marginal exceeds th_c; falls back to the MLE
// position alone when the threshold cuts everything off.
std::vector<std::size_t> candidate_set(const LikelihoodField& field, const StateSpace& space,
                                       double th_c);

}  // namespace lumisim

#endif  // LUMISIM_LOCALIZATION_HPP
