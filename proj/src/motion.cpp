#include "lumisim/motion.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace lumisim {

namespace {

constexpr double kTruncSigmas = 3.5;  // Gaussian support cutoff for the kernel
constexpr int kSamplerRetries = 16;

double gauss(double x, double sigma) {
    const double z = x / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

}  // namespace

void MotionParams::validate() const {
    if (sigma_a < 0.0 || sigma_v < 0.0) {
        throw std::invalid_argument("motion: sigma_a and sigma_v must be >= 0");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("motion: dt must be > 0");
    }
}

void TransitionKernel::accumulate_transposed(const std::vector<double>& weights,
                                             std::vector<double>& out) const {
    const std::size_t n = state_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights[i];
        if (w == 0.0) continue;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            out[col[k]] += val[k] * w;
        }
    }
}

std::string TransitionKernel::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "i,j,value\n";
    const std::size_t n = state_count();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            out << i << "," << col[k] << "," << val[k] << "\n";
        }
    }
    return out.str();
}

TransitionKernel build_transition_kernel(const StateSpace& space, const RoomLayout& layout,
                                         const MotionParams& params) {
    params.validate();
    if (space.state_count() == 0) {
        throw std::invalid_argument("transition kernel: empty state space");
    }

    const double dt = params.dt;
    const double sigma_vel = params.sigma_a * dt;  // per-axis velocity deviation
    const double sigma_pos = params.sigma_v * dt;  // per-axis position deviation given velocity

    const std::size_t n_pos = space.position_count();
    const std::size_t n_vel = space.velocity_count();
    const std::size_t n_states = space.state_count();

    // Cell -> position index lookup for window scans.
    const int nx = space.grid.cells_x(layout);
    const int ny = space.grid.cells_y(layout);
    std::vector<int> pos_at_cell(static_cast<std::size_t>(nx) * ny, -1);
    for (std::size_t p = 0; p < n_pos; ++p) {
        pos_at_cell[static_cast<std::size_t>(space.pos_cell[p])] = static_cast<int>(p);
    }

    TransitionKernel kernel;
    kernel.row_ptr.reserve(n_states + 1);
    kernel.row_ptr.push_back(0);

    std::vector<std::uint32_t> row_cols;
    std::vector<double> row_vals;

    for (std::size_t i = 0; i < n_states; ++i) {
        const StateVector s = space.state(i);
        const double pr_static = static_mode_prob(layout, s);

        row_cols.clear();
        row_vals.clear();

        if (pr_static < 1.0) {
            // Moving-mode weights: velocity deviation ~ N(0, (sigma_a*dt)^2)
            // per axis; position, given the new velocity, lands at the
            // trapezoidal mean with deviation ~ N(0, (sigma_v*dt)^2).
            for (std::size_t v = 0; v < n_vel; ++v) {
                const double dvx = space.vel_x[v] - s.vx;
                const double dvy = space.vel_y[v] - s.vy;

                double w_vel;
                if (sigma_vel > 0.0) {
                    if (std::abs(dvx) > kTruncSigmas * sigma_vel ||
                        std::abs(dvy) > kTruncSigmas * sigma_vel) {
                        continue;
                    }
                    w_vel = gauss(dvx, sigma_vel) * gauss(dvy, sigma_vel);
                } else {
                    if (dvx != 0.0 || dvy != 0.0) continue;
                    w_vel = 1.0;
                }

                const double mean_x = s.x + 0.5 * (s.vx + space.vel_x[v]) * dt;
                const double mean_y = s.y + 0.5 * (s.vy + space.vel_y[v]) * dt;

                if (sigma_pos > 0.0) {
                    const double win = kTruncSigmas * sigma_pos;
                    int cx_lo = static_cast<int>(
                        std::floor((mean_x - win - space.grid.origin_x) / space.grid.cell_size));
                    int cx_hi = static_cast<int>(
                        std::floor((mean_x + win - space.grid.origin_x) / space.grid.cell_size));
                    int cy_lo = static_cast<int>(
                        std::floor((mean_y - win - space.grid.origin_y) / space.grid.cell_size));
                    int cy_hi = static_cast<int>(
                        std::floor((mean_y + win - space.grid.origin_y) / space.grid.cell_size));
                    cx_lo = std::max(cx_lo, 0);
                    cy_lo = std::max(cy_lo, 0);
                    cx_hi = std::min(cx_hi, nx - 1);
                    cy_hi = std::min(cy_hi, ny - 1);
                    for (int cy = cy_lo; cy <= cy_hi; ++cy) {
                        for (int cx = cx_lo; cx <= cx_hi; ++cx) {
                            const int p = pos_at_cell[static_cast<std::size_t>(cy) * nx + cx];
                            if (p < 0) continue;
                            const std::size_t j = space.state_index(static_cast<std::size_t>(p), v);
                            if (j == i) continue;  // diagonal carries only Pr^S
                            const double w = w_vel *
                                             gauss(space.pos_x[static_cast<std::size_t>(p)] - mean_x,
                                                   sigma_pos) *
                                             gauss(space.pos_y[static_cast<std::size_t>(p)] - mean_y,
                                                   sigma_pos);
                            if (w <= 0.0) continue;
                            row_cols.push_back(static_cast<std::uint32_t>(j));
                            row_vals.push_back(w);
                        }
                    }
                } else {
                    // Deterministic position: snap to the containing cell.
                    if (!is_valid_position(layout, mean_x, mean_y)) continue;
                    const int cell = space.grid.cell_of(layout, mean_x, mean_y);
                    const int p = pos_at_cell[static_cast<std::size_t>(cell)];
                    if (p < 0) continue;
                    const std::size_t j = space.state_index(static_cast<std::size_t>(p), v);
                    if (j == i) continue;
                    row_cols.push_back(static_cast<std::uint32_t>(j));
                    row_vals.push_back(w_vel);
                }
            }
        }

        double moving_mass = 0.0;
        for (double w : row_vals) moving_mass += w;

        if (moving_mass <= 0.0) {
            // Isolated state: nowhere to go, keep all mass on the diagonal.
            if (pr_static < 1.0) ++kernel.isolated_rows;
            kernel.col.push_back(static_cast<std::uint32_t>(i));
            kernel.val.push_back(1.0);
            kernel.row_ptr.push_back(kernel.col.size());
            continue;
        }

        const double scale = (1.0 - pr_static) / moving_mass;
        if (pr_static > 0.0) {
            kernel.col.push_back(static_cast<std::uint32_t>(i));
            kernel.val.push_back(pr_static);
        }
        for (std::size_t k = 0; k < row_cols.size(); ++k) {
            kernel.col.push_back(row_cols[k]);
            kernel.val.push_back(row_vals[k] * scale);
        }

        // Exact renormalization of the assembled row.
        double total = 0.0;
        for (std::size_t k = kernel.row_ptr.back(); k < kernel.col.size(); ++k) {
            total += kernel.val[k];
        }
        for (std::size_t k = kernel.row_ptr.back(); k < kernel.col.size(); ++k) {
            kernel.val[k] /= total;
        }
        kernel.row_ptr.push_back(kernel.col.size());
    }

    if (kernel.isolated_rows > 0) {
        std::cerr << "warning: transition kernel has " << kernel.isolated_rows
                  << " isolated state(s) pinned to self-transition\n";
    }
    return kernel;
}

StateVector sample_next_state(const StateVector& s, const MotionParams& params,
                              const RoomLayout& layout, RngStream& rng,
                              const StateSpace* snap_to) {
    params.validate();
    if (s.zero_velocity() && rng.uniform01() < static_mode_prob(layout, s)) {
        return s;
    }
    const double dt = params.dt;
    const double sigma_n = params.sigma_v * dt;
    for (int attempt = 0; attempt < kSamplerRetries; ++attempt) {
        const double ax = rng.normal(0.0, params.sigma_a);
        const double ay = rng.normal(0.0, params.sigma_a);
        const double nx = rng.normal(0.0, sigma_n);
        const double ny = rng.normal(0.0, sigma_n);
        StateVector next;
        next.x = s.x + s.vx * dt + 0.5 * ax * dt * dt + nx;
        next.y = s.y + s.vy * dt + 0.5 * ay * dt * dt + ny;
        next.vx = s.vx + ax * dt;
        next.vy = s.vy + ay * dt;
        if (is_valid_position(layout, next.x, next.y)) {
            if (snap_to) {
                const std::size_t v = snap_to->nearest_velocity(next.vx, next.vy);
                next.vx = snap_to->vel_x[v];
                next.vy = snap_to->vel_y[v];
            }
            return next;
        }
    }
    return {s.x, s.y, -s.vx, -s.vy};
}

}  // namespace lumisim
