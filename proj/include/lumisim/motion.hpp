#ifndef LUMISIM_MOTION_HPP
#define LUMISIM_MOTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lumisim/geometry.hpp"
#include "lumisim/rng.hpp"

namespace lumisim {

struct MotionParams {
    double sigma_a = 0.5;  // acceleration std, m/s^2
    double sigma_v = 0.2;  // deviation velocity std, m/s (sigma_n = sigma_v * dt)
    double dt = 1.0;       // step period, seconds

    void validate() const;  // throws std::invalid_argument
};

// Row-stochastic sparse transition matrix over a StateSpace, CSR layout.
// prob(i, j) = Pr(u_t = s_j | u_{t-1} = s_i).
struct TransitionKernel {
    std::vector<std::size_t> row_ptr;   // state_count + 1 entries
    std::vector<std::uint32_t> col;     // destination state per entry
    std::vector<double> val;
    std::size_t isolated_rows = 0;      // rows forced to self-transition

    std::size_t state_count() const { return row_ptr.size() - 1; }
    std::size_t nnz() const { return col.size(); }

    double prob(std::size_t from, std::size_t to) const {
        for (std::size_t k = row_ptr[from]; k < row_ptr[from + 1]; ++k) {
            if (col[k] == to) return val[k];
        }
        return 0.0;
    }

    double row_sum(std::size_t from) const {
        double s = 0.0;
        for (std::size_t k = row_ptr[from]; k < row_ptr[from + 1]; ++k) s += val[k];
        return s;
    }

    // Accumulates out[j] += sum_i weights[i] * prob(i, j); out must be sized
    // and zeroed by the caller. This is the predict step of the tracker.
    void accumulate_transposed(const std::vector<double>& weights,
                               std::vector<double>& out) const;

    std::string to_csv() const;  // "i,j,value" rows, header included
};

// Discretized switching-mode transition model. Diagonal entries carry the
// stay-static probability; the remaining mass follows the moving-mode
// Gaussian over neighbor states, truncated and renormalized.
TransitionKernel build_transition_kernel(const StateSpace& space, const RoomLayout& layout,
                                         const MotionParams& params);

// Continuous counterpart used to drive the simulated occupant. Invalid
// proposals are resampled a bounded number of times, then the velocity is
// reflected in place. When snap_to is given, the returned velocity is
// snapped to the nearest entry of its discrete velocity set, which keeps
// long walks inside the kernel's envelope and lets the static mode
// re-engage when the walker slows down.
StateVector sample_next_state(const StateVector& s, const MotionParams& params,
                              const RoomLayout& layout, RngStream& rng,
                              const StateSpace* snap_to = nullptr);

}  // namespace lumisim

#endif  // LUMISIM_MOTION_HPP
