#include "lumisim/localization.hpp"

#include <stdexcept>

namespace lumisim {

namespace {

// Joint likelihood of the measurement vector for a user at (x, y) in the
// given mode, across all sensors.
double measurement_likelihood(std::span<const SensorSpec> sensors,
                              const MeasurementVector& b, double x, double y,
                              bool moving) {
    double prod = 1.0;
    for (std::size_t k = 0; k < sensors.size(); ++k) {
        prod *= detection_likelihood(sensors[k], x, y, moving, b.bits[k]);
        if (prod == 0.0) break;
    }
    return prod;
}

void normalize(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    for (double& x : v) x /= sum;
}

}  // namespace

LikelihoodField reset(const StateSpace& space) {
    const std::size_t n = space.state_count();
    if (n == 0) throw std::invalid_argument("localization reset: empty state space");
    LikelihoodField field;
    field.values.assign(n, 1.0 / static_cast<double>(n));
    field.t = 0;
    return field;
}

LikelihoodField update(const LikelihoodField& field, const TransitionKernel& kernel,
                       std::span<const SensorSpec> sensors, const MeasurementVector& b,
                       const StateSpace& space) {
    const std::size_t n = space.state_count();
    if (field.values.size() != n || kernel.state_count() != n) {
        throw std::invalid_argument("localization update: field/kernel/space mismatch");
    }
    if (b.bits.size() != sensors.size()) {
        throw std::invalid_argument("localization update: measurement/sensor mismatch");
    }

    // Emission likelihoods depend only on the destination position and mode.
    const std::size_t n_pos = space.position_count();
    std::vector<double> emit_static(n_pos), emit_moving(n_pos);
    for (std::size_t p = 0; p < n_pos; ++p) {
        emit_static[p] =
            measurement_likelihood(sensors, b, space.pos_x[p], space.pos_y[p], false);
        emit_moving[p] =
            measurement_likelihood(sensors, b, space.pos_x[p], space.pos_y[p], true);
    }

    // predicted[j] = sum_i T(i, j) * L(i) over all sources, then the static
    // hypothesis (i == j) is re-weighted with its own detection profile.
    std::vector<double> predicted(n, 0.0);
    kernel.accumulate_transposed(field.values, predicted);

    LikelihoodField next;
    next.t = field.t + 1;
    next.underflow_count = field.underflow_count;
    next.values.resize(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t p = space.position_of(j);
        const double self = kernel.prob(j, j) * field.values[j];
        const double moved = predicted[j] - self;
        const double v = emit_static[p] * self + emit_moving[p] * (moved > 0.0 ? moved : 0.0);
        next.values[j] = v;
        total += v;
    }

    if (total <= 0.0) {
        // Every state contradicts the measurements; restart from the
        // measurement-only likelihood so the tracker stays alive.
        next.last_underflow = true;
        ++next.underflow_count;
        total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t p = space.position_of(j);
            const std::size_t v = space.velocity_of(j);
            const bool is_static = space.vel_x[v] == 0.0 && space.vel_y[v] == 0.0;
            next.values[j] = is_static ? emit_static[p] : emit_moving[p];
            total += next.values[j];
        }
        if (total <= 0.0) {
            next.values.assign(n, 1.0 / static_cast<double>(n));
            return next;
        }
    }

    normalize(next.values);
    return next;
}

LocalizationResult estimate(const LikelihoodField& field, const StateSpace& space) {
    if (field.values.size() != space.state_count()) {
        throw std::invalid_argument("localization estimate: field/space mismatch");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < field.values.size(); ++i) {
        if (field.values[i] > field.values[best]) best = i;
    }
    LocalizationResult result;
    result.mle_index = best;
    result.mle_state = space.state(best);

    const std::size_t mle_pos = space.position_of(best);
    double marginal = 0.0;
    for (std::size_t v = 0; v < space.velocity_count(); ++v) {
        marginal += field.values[space.state_index(mle_pos, v)];
    }
    result.peak_value = marginal;
    return result;
}

LocalizationResult localize(const LikelihoodField& field, const StateSpace& space,
                            double th_c) {
    LocalizationResult result = estimate(field, space);
    result.candidates = candidate_set(field, space, th_c);
    return result;
}

std::vector<double> position_marginals(const LikelihoodField& field, const StateSpace& space) {
    std::vector<double> marginals(space.position_count(), 0.0);
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        marginals[space.position_of(i)] += field.values[i];
    }
    return marginals;
}

std::vector<std::size_t> candidate_set(const LikelihoodField& field, const StateSpace& space,
                                       double th_c) {
    if (th_c < 0.0 || th_c >= 1.0) {
        throw std::invalid_argument("candidate_set: threshold outside [0,1)");
    }
    const std::vector<double> marginals = position_marginals(field, space);
    std::vector<std::size_t> candidates;
    for (std::size_t p = 0; p < marginals.size(); ++p) {
        if (marginals[p] > th_c) candidates.push_back(p);
    }
    if (candidates.empty()) {
        candidates.push_back(space.position_of(estimate(field, space).mle_index));
    }
    return candidates;
}

}  // namespace lumisim
