#include "lumisim/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace lumisim;

namespace {

RoomLayout open_room(double w, double d) {
    RoomLayout room;
    room.width = w;
    room.depth = d;
    return room;
}

}  // namespace

TEST_CASE("office-sized grid yields 24 x 14 positions") {
    const RoomLayout room = open_room(7.2, 4.2);
    GridSpec grid;
    grid.cell_size = 0.3;
    const StateSpace space = build_state_space(room, grid, {0.0});
    CHECK(grid.cells_x(room) == 24);
    CHECK(grid.cells_y(room) == 14);
    CHECK(space.position_count() == 336);
}

TEST_CASE("single-cell room with only the rest speed has one state") {
    const RoomLayout room = open_room(1.0, 1.0);
    GridSpec grid;
    grid.cell_size = 1.0;
    const StateSpace space = build_state_space(room, grid, {0.0});
    REQUIRE(space.state_count() == 1);
    const StateVector s = space.state(0);
    CHECK(s.x == doctest::Approx(0.5));
    CHECK(s.y == doctest::Approx(0.5));
    CHECK(s.vx == 0.0);
    CHECK(s.vy == 0.0);
}

TEST_CASE("blocked cell drops out and speeds fan into 8 directions") {
    RoomLayout room = open_room(2.0, 1.0);
    room.invalid_regions.push_back({0.0, 0.0, 1.0, 1.0});
    GridSpec grid;
    grid.cell_size = 1.0;
    const StateSpace space = build_state_space(room, grid, {0.0, 1.0});
    CHECK(space.position_count() == 1);
    CHECK(space.velocity_count() == 9);
    CHECK(space.state_count() == 9);
    // Exactly one rest velocity, listed first.
    CHECK(space.vel_x[0] == 0.0);
    CHECK(space.vel_y[0] == 0.0);
    int rest_count = 0;
    for (std::size_t v = 0; v < space.velocity_count(); ++v) {
        if (space.vel_x[v] == 0.0 && space.vel_y[v] == 0.0) ++rest_count;
        CHECK(std::hypot(space.vel_x[v], space.vel_y[v]) ==
              doctest::Approx(v == 0 ? 0.0 : 1.0));
    }
    CHECK(rest_count == 1);
}

TEST_CASE("is_valid_position basics") {
    RoomLayout room = open_room(4.0, 3.0);
    room.invalid_regions.push_back({1.0, 1.0, 2.0, 2.0});
    CHECK(is_valid_position(room, 0.5, 0.5));
    CHECK_FALSE(is_valid_position(room, -0.1, 0.0));
    CHECK_FALSE(is_valid_position(room, 1.5, 1.5));
    CHECK(is_valid_position(room, 4.0, 3.0));
    CHECK_FALSE(is_valid_position(room, 4.01, 3.0));
}

TEST_CASE("static mode probability by zone, velocity, and default") {
    RoomLayout room = open_room(5.0, 5.0);
    room.static_zones.push_back({{1.0, 1.0, 2.0, 2.0}, 0.9});
    room.static_default = 0.5;

    CHECK(static_mode_prob(room, {1.5, 1.5, 0.0, 0.0}) == doctest::Approx(0.9));
    CHECK(static_mode_prob(room, {1.5, 1.5, 0.6, 0.0}) == 0.0);
    CHECK(static_mode_prob(room, {4.0, 4.0, 0.0, 0.0}) == doctest::Approx(0.5));

    // Overlapping zones: the last-declared zone wins.
    room.static_zones.push_back({{1.2, 1.2, 1.8, 1.8}, 0.2});
    CHECK(static_mode_prob(room, {1.5, 1.5, 0.0, 0.0}) == doctest::Approx(0.2));
    CHECK(static_mode_prob(room, {1.1, 1.1, 0.0, 0.0}) == doctest::Approx(0.9));
}

TEST_CASE("every state sits at a valid position and rebuilds identically") {
    RoomLayout room = open_room(3.6, 2.4);
    room.invalid_regions.push_back({0.0, 0.0, 1.2, 0.6});
    room.invalid_regions.push_back({2.4, 1.8, 3.6, 2.4});
    GridSpec grid;
    grid.cell_size = 0.3;
    const StateSpace a = build_state_space(room, grid, {0.0, 0.6, 1.2});
    const StateSpace b = build_state_space(room, grid, {0.0, 0.6, 1.2});

    REQUIRE(a.state_count() == b.state_count());
    for (std::size_t i = 0; i < a.state_count(); ++i) {
        const StateVector s = a.state(i);
        CHECK(is_valid_position(room, s.x, s.y));
        const StateVector t = b.state(i);
        CHECK(s.x == t.x);
        CHECK(s.y == t.y);
        CHECK(s.vx == t.vx);
        CHECK(s.vy == t.vy);
        CHECK(static_mode_prob(room, s) >= 0.0);
        CHECK(static_mode_prob(room, s) <= 1.0);
        if (!s.zero_velocity()) CHECK(static_mode_prob(room, s) == 0.0);
    }
}

TEST_CASE("fully blocked room is rejected") {
    RoomLayout room = open_room(1.0, 1.0);
    room.invalid_regions.push_back({0.0, 0.0, 1.0, 1.0});
    GridSpec grid;
    grid.cell_size = 0.5;
    CHECK_THROWS_AS(build_state_space(room, grid, {0.0}), std::runtime_error);
}

TEST_CASE("bad inputs are rejected") {
    const RoomLayout room = open_room(1.0, 1.0);
    GridSpec grid;
    grid.cell_size = 0.5;
    CHECK_THROWS_AS(build_state_space(room, grid, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_state_space(room, grid, {-1.0}), std::invalid_argument);
    GridSpec bad = grid;
    bad.cell_size = 0.0;
    CHECK_THROWS_AS(build_state_space(room, bad, {0.0}), std::invalid_argument);
}
