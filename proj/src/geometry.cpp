#include "lumisim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace lumisim {

void RoomLayout::validate() const {
    if (!(width > 0.0) || !(depth > 0.0)) {
        throw std::invalid_argument("room: width and depth must be > 0");
    }
    for (const Rect& r : invalid_regions) {
        if (r.x1 < r.x0 || r.y1 < r.y0) {
            throw std::invalid_argument("room: invalid region with negative extent");
        }
        if (r.x0 < 0.0 || r.y0 < 0.0 || r.x1 > width || r.y1 > depth) {
            throw std::invalid_argument("room: invalid region outside room bounds");
        }
    }
    for (const StaticZone& z : static_zones) {
        if (z.rect.x1 < z.rect.x0 || z.rect.y1 < z.rect.y0) {
            throw std::invalid_argument("room: static zone with negative extent");
        }
        if (z.rect.x0 < 0.0 || z.rect.y0 < 0.0 || z.rect.x1 > width || z.rect.y1 > depth) {
            throw std::invalid_argument("room: static zone outside room bounds");
        }
        if (z.prob < 0.0 || z.prob > 1.0) {
            throw std::invalid_argument("room: static zone probability outside [0,1]");
        }
    }
    if (static_default < 0.0 || static_default > 1.0) {
        throw std::invalid_argument("room: static default probability outside [0,1]");
    }
}

int GridSpec::cells_x(const RoomLayout& layout) const {
    return static_cast<int>(std::ceil((layout.width - origin_x) / cell_size - 1e-9));
}

int GridSpec::cells_y(const RoomLayout& layout) const {
    return static_cast<int>(std::ceil((layout.depth - origin_y) / cell_size - 1e-9));
}

int GridSpec::cell_count(const RoomLayout& layout) const {
    return cells_x(layout) * cells_y(layout);
}

int GridSpec::cell_of(const RoomLayout& layout, double x, double y) const {
    const int nx = cells_x(layout);
    const int ny = cells_y(layout);
    int cx = static_cast<int>(std::floor((x - origin_x) / cell_size));
    int cy = static_cast<int>(std::floor((y - origin_y) / cell_size));
    cx = std::clamp(cx, 0, nx - 1);
    cy = std::clamp(cy, 0, ny - 1);
    return cy * nx + cx;
}

void GridSpec::cell_center(const RoomLayout& layout, int cell, double& x, double& y) const {
    const int nx = cells_x(layout);
    const int cx = cell % nx;
    const int cy = cell / nx;
    x = origin_x + (cx + 0.5) * cell_size;
    y = origin_y + (cy + 0.5) * cell_size;
}

bool is_valid_position(const RoomLayout& layout, double x, double y) {
    if (x < 0.0 || x > layout.width || y < 0.0 || y > layout.depth) return false;
    for (const Rect& r : layout.invalid_regions) {
        if (r.contains(x, y)) return false;
    }
    return true;
}

double static_mode_prob(const RoomLayout& layout, const StateVector& s) {
    if (!s.zero_velocity()) return 0.0;
    double p = layout.static_default;
    for (const StaticZone& z : layout.static_zones) {
        if (z.rect.contains(s.x, s.y)) p = z.prob;  // last-declared zone wins
    }
    return p;
}

int StateSpace::nearest_position(double x, double y) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < pos_x.size(); ++p) {
        const double dx = pos_x[p] - x;
        const double dy = pos_y[p] - y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<int>(p);
        }
    }
    return best;
}

std::size_t StateSpace::nearest_velocity(double vx, double vy) const {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < vel_x.size(); ++v) {
        const double dx = vel_x[v] - vx;
        const double dy = vel_y[v] - vy;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = v;
        }
    }
    return best;
}

StateSpace build_state_space(const RoomLayout& layout, const GridSpec& grid,
                             const std::vector<double>& speed_levels) {
    layout.validate();
    if (!(grid.cell_size > 0.0)) {
        throw std::invalid_argument("grid: cell_size must be > 0");
    }
    if (speed_levels.empty()) {
        throw std::invalid_argument("state space: speed level list is empty");
    }
    for (double s : speed_levels) {
        if (s < 0.0) throw std::invalid_argument("state space: negative speed level");
    }

    StateSpace space;
    space.grid = grid;

    const int nx = grid.cells_x(layout);
    const int ny = grid.cells_y(layout);
    for (int cy = 0; cy < ny; ++cy) {
        for (int cx = 0; cx < nx; ++cx) {
            const double x = grid.origin_x + (cx + 0.5) * grid.cell_size;
            const double y = grid.origin_y + (cy + 0.5) * grid.cell_size;
            if (!is_valid_position(layout, x, y)) continue;
            space.pos_x.push_back(x);
            space.pos_y.push_back(y);
            space.pos_cell.push_back(cy * nx + cx);
        }
    }
    if (space.pos_x.empty()) {
        throw std::runtime_error("state space: invalid regions cover every cell");
    }

    // Rest first, then each distinct nonzero speed fanned over 8 compass
    // directions, counterclockwise from +x. Exact direction components keep
    // the set closed under negation (wall reflections land back in the set).
    const double diag = std::sqrt(0.5);
    const double dir_x[8] = {1.0, diag, 0.0, -diag, -1.0, -diag, 0.0, diag};
    const double dir_y[8] = {0.0, diag, 1.0, diag, 0.0, -diag, -1.0, -diag};
    space.vel_x.push_back(0.0);
    space.vel_y.push_back(0.0);
    std::set<double> speeds(speed_levels.begin(), speed_levels.end());
    for (double s : speeds) {
        if (s == 0.0) continue;
        for (int k = 0; k < 8; ++k) {
            space.vel_x.push_back(s * dir_x[k]);
            space.vel_y.push_back(s * dir_y[k]);
        }
    }
    return space;
}

}  // namespace lumisim
