#include "sfc/env/layouts.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sfc::env {

namespace {

void wall_column(GridSpec& spec, int x, std::initializer_list<int> gaps) {
  for (int y = 0; y < spec.height; ++y) {
    bool gap = false;
    for (int g : gaps) gap = gap || g == y;
    if (!gap) spec.walls.insert({x, y});
  }
}

}  // namespace

GridSpec three_rooms() {
  GridSpec spec;
  spec.name = "three_rooms";
  spec.width = 17;
  spec.height = 11;
  wall_column(spec, 5, {5});
  wall_column(spec, 11, {5});
  spec.doorways["left_middle"] = {{5, 5}};
  spec.doorways["middle_right"] = {{11, 5}};
  spec.starts = {kThreeRoomsAnchor};
  spec.max_steps = 200;
  return spec;
}

GridSpec flytrap() {
  GridSpec spec;
  spec.name = "flytrap";
  spec.width = 41;
  spec.height = 9;
  // Doors alternate between bottom and top corners.
  wall_column(spec, 9, {8});
  wall_column(spec, 19, {0});
  wall_column(spec, 29, {8});
  wall_column(spec, 39, {0});
  wall_column(spec, 40, {0});
  spec.doorways["room1_room2"] = {{9, 8}};
  spec.doorways["room2_room3"] = {{19, 0}};
  spec.doorways["room3_room4"] = {{29, 8}};
  spec.doorways["room4_exit"] = {{39, 0}};
  spec.terminal_rewards[{40, 0}] = 1.0;
  spec.starts = {{4, 4}};
  spec.max_steps = 500;
  return spec;
}

GridSpec distraction() {
  GridSpec spec;
  spec.name = "distraction";
  spec.width = 43;
  spec.height = 3;
  // Left: sections x 0-5 | 7-12 | 14-19, junction 20-22, right: 23-28 | 30-35 | 37-42.
  for (int x : {6, 13, 29, 36}) wall_column(spec, x, {1});
  spec.doorways["left_far"] = {{6, 1}};
  spec.doorways["left_near"] = {{13, 1}};
  spec.doorways["right_near"] = {{29, 1}};
  spec.doorways["right_far"] = {{36, 1}};
  for (Cell apple : {Cell{16, 0}, Cell{16, 2}, Cell{18, 0}, Cell{18, 2}}) spec.step_rewards[apple] = 0.05;
  spec.terminal_rewards[{42, 1}] = 1.0;
  spec.starts = {{21, 1}};
  spec.max_steps = 300;
  return spec;
}

GridSpec chain(int n) {
  if (n < 1) throw std::invalid_argument("chain needs at least one state");
  GridSpec spec;
  spec.name = "chain:" + std::to_string(n);
  spec.width = n;
  spec.height = 1;
  spec.starts = {{0, 0}};
  spec.max_steps = 100;
  return spec;
}

GridSpec parse_map(std::string_view text, std::string name, int max_steps) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw std::invalid_argument("map is empty");

  GridSpec spec;
  spec.name = std::move(name);
  spec.height = static_cast<int>(rows.size());
  for (const auto& r : rows) spec.width = std::max(spec.width, static_cast<int>(r.size()));
  spec.max_steps = max_steps;
  for (int y = 0; y < spec.height; ++y) {
    const std::string& row = rows[static_cast<std::size_t>(y)];
    for (int x = 0; x < spec.width; ++x) {
      char ch = x < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(x)] : '#';
      Cell c{x, y};
      switch (ch) {
        case '#': spec.walls.insert(c); break;
        case '.': break;
        case 'S': spec.starts.push_back(c); break;
        case 'G': spec.terminal_rewards[c] = 1.0; break;
        case 'a': spec.step_rewards[c] = 0.05; break;
        default:
          throw std::invalid_argument("unexpected map character '" + std::string(1, ch) + "' at row " +
                                      std::to_string(y));
      }
    }
  }
  spec.validate();
  return spec;
}

GridSpec load_map_file(const std::string& path, int max_steps) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str(), path, max_steps);
}

GridSpec make_spec(const std::string& name) {
  if (name == "three_rooms") return three_rooms();
  if (name == "flytrap") return flytrap();
  if (name == "distraction") return distraction();
  if (name.starts_with("chain:")) {
    const std::string n = name.substr(6);
    std::size_t used = 0;
    int len = 0;
    try {
      len = std::stoi(n, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != n.size()) throw std::invalid_argument("bad chain length in " + name);
    return chain(len);
  }
  throw std::invalid_argument("unknown environment: " + name);
}

}  // namespace sfc::env
