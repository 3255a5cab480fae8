#ifndef LUMISIM_GEOMETRY_HPP
#define LUMISIM_GEOMETRY_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace lumisim {

// Axis-aligned rectangle in room coordinates (meters).
struct Rect {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

// Rectangle where the occupant tends to stay put (near desks etc.).
struct StaticZone {
    Rect rect;
    double prob = 0.5;  // stay-static probability inside the zone
};

// Rectangular room with furniture blocks the occupant cannot enter.
// Later-declared static zones win where zones overlap.
struct RoomLayout {
    double width = 0.0;   // x extent, meters
    double depth = 0.0;   // y extent, meters
    std::vector<Rect> invalid_regions;
    std::vector<StaticZone> static_zones;
    double static_default = 0.5;  // stay-static probability outside all zones

    void validate() const;  // throws std::invalid_argument on bad geometry
};

struct GridSpec {
    double cell_size = 0.3;  // meters
    double origin_x = 0.0;
    double origin_y = 0.0;

    int cells_x(const RoomLayout& layout) const;
    int cells_y(const RoomLayout& layout) const;
    int cell_count(const RoomLayout& layout) const;

    // Flat cell index (row-major, y outer) for an arbitrary point; points
    // outside the grid are clamped to the nearest cell.
    int cell_of(const RoomLayout& layout, double x, double y) const;
    void cell_center(const RoomLayout& layout, int cell, double& x, double& y) const;
};

// User kinematic state [x, y, vx, vy].
struct StateVector {
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;

    bool zero_velocity() const { return vx == 0.0 && vy == 0.0; }
    bool same_position(const StateVector& o) const { return x == o.x && y == o.y; }
};

// Discrete state space: valid cell centers crossed with a finite velocity set.
// State index = position_index * velocity_count + velocity_index.
struct StateSpace {
    std::vector<double> pos_x;        // per position index
    std::vector<double> pos_y;
    std::vector<int> pos_cell;        // grid cell index per position
    std::vector<double> vel_x;        // per velocity index
    std::vector<double> vel_y;
    GridSpec grid;

    std::size_t position_count() const { return pos_x.size(); }
    std::size_t velocity_count() const { return vel_x.size(); }
    std::size_t state_count() const { return pos_x.size() * vel_x.size(); }

    std::size_t position_of(std::size_t state) const { return state / vel_x.size(); }
    std::size_t velocity_of(std::size_t state) const { return state % vel_x.size(); }
    std::size_t state_index(std::size_t pos, std::size_t vel) const {
        return pos * vel_x.size() + vel;
    }

    StateVector state(std::size_t index) const {
        const std::size_t p = position_of(index);
        const std::size_t v = velocity_of(index);
        return {pos_x[p], pos_y[p], vel_x[v], vel_y[v]};
    }

    // Position index of the valid cell containing (x, y), or the nearest
    // valid cell center if that cell is blocked. -1 on an empty space.
    int nearest_position(double x, double y) const;

    // Velocity index closest to (vx, vy) in Euclidean norm.
    std::size_t nearest_velocity(double vx, double vy) const;
};

bool is_valid_position(const RoomLayout& layout, double x, double y);

// Stay-static probability for a state: zero for any moving state, else the
// innermost (last-declared) zone containing the position, else the default.
double static_mode_prob(const RoomLayout& layout, const StateVector& s);

// Builds the indexed state space. Velocity set = {(0,0)} plus each nonzero
// speed level fanned over the 8 compass directions. Throws if the invalid
// regions swallow every cell.
StateSpace build_state_space(const RoomLayout& layout, const GridSpec& grid,
                             const std::vector<double>& speed_levels);

}  // namespace lumisim

#endif  // LUMISIM_GEOMETRY_HPP
