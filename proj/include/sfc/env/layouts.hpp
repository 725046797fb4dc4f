#pragma once

#include <string>
#include <string_view>

#include "sfc/env/grid.hpp"

namespace sfc::env {

// 11x17, three 11x5 rooms joined by single-cell doorways at mid-height.
GridSpec three_rooms();
// Cell at the center of the left room of three_rooms().
inline constexpr Cell kThreeRoomsAnchor{2, 5};

// Four 9x9 rooms in a row, corner doors, +1 one cell past the last door.
GridSpec flytrap();

// Junction with a short apple corridor to the left and a longer rewarded
// corridor to the right.
GridSpec distraction();

// 1 x n corridor without rewards.
GridSpec chain(int n);

// '#' wall, '.' floor, 'S' start, 'G' terminal +1, 'a' apple +0.05.
GridSpec parse_map(std::string_view text, std::string name = "custom", int max_steps = 500);
GridSpec load_map_file(const std::string& path, int max_steps = 500);

// "three_rooms", "flytrap", "distraction", "chain:<n>".
GridSpec make_spec(const std::string& name);

}  // namespace sfc::env
