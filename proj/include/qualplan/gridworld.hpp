// Copyright 2026 The qualplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file gridworld.hpp
 * @brief Room navigation models with slipping moves and wall-pattern sensing.
 *
 * Cells are (row, col), 1-based, row 1 at the top. Obstacle cells are not
 * states. Every cell gets the actions S, T, D, L, R in that order:
 *
 *   - S and blocked moves (boundary, obstacle or wall) stay put at 1_L;
 *   - a free move reaches its target at 1_L, and each neighbour of the target
 *     perpendicular to the motion (free, not walled off from the target) at
 *     the slip level.
 *
 * The goal has utility 1_L, its free orthogonal neighbours the neighbour
 * label, every other cell 0_L. In wall mode the robot observes, noise-free,
 * which of its four sides (N, E, S, W) are blocked; in full mode it observes
 * its cell.
 */

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"

namespace qualplan {

struct Cell {
  int row = 1;
  int col = 1;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class ObservationMode { full, walls };

struct GridworldSpec {
  int width = 3;
  int height = 3;
  std::vector<Cell> obstacles;
  std::vector<std::pair<Cell, Cell>> walls;  // each between two adjacent cells
  Cell goal{3, 3};
  std::vector<std::string> scale_labels{"0", "0.2", "0.5", "0.8", "1"};
  std::string neighbor_utility = "0.5";
  std::string slip = "0.2";
  ObservationMode observation = ObservationMode::walls;
};

inline constexpr std::array<const char*, 5> kGridActions{"S", "T", "D", "L", "R"};

/// The 3x3 room used by the golden tests: s12 and s31 blocked, goal s33.
inline GridworldSpec reference_room() {
  GridworldSpec spec;
  spec.obstacles = {{1, 2}, {3, 1}};
  return spec;
}

inline std::string cell_name(const GridworldSpec& spec, Cell c) {
  if (spec.width <= 9 && spec.height <= 9) return "s" + std::to_string(c.row) + std::to_string(c.col);
  return "s" + std::to_string(c.row) + "_" + std::to_string(c.col);
}

namespace detail {

class Room {
 public:
  explicit Room(const GridworldSpec& spec) : spec_(spec) {
    for (Cell c : spec.obstacles) blocked_.insert(c);
    for (const auto& [a, b] : spec.walls) {
      walls_.insert({std::min(a, b), std::max(a, b)});
    }
  }

  bool in_bounds(Cell c) const { return c.row >= 1 && c.row <= spec_.height && c.col >= 1 && c.col <= spec_.width; }
  bool free(Cell c) const { return in_bounds(c) && !blocked_.count(c); }
  bool wall(Cell a, Cell b) const { return walls_.count({std::min(a, b), std::max(a, b)}) != 0; }
  /// True when moving from a into adjacent b is possible.
  bool open(Cell a, Cell b) const { return free(b) && !wall(a, b); }

 private:
  const GridworldSpec& spec_;
  std::set<Cell> blocked_;
  std::set<std::pair<Cell, Cell>> walls_;
};

inline bool adjacent(Cell a, Cell b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1; }

inline std::vector<std::string> check_spec(const GridworldSpec& spec, const Scale* scale) {
  std::vector<std::string> problems;
  auto where = [&](Cell c) { return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")"; };
  if (spec.width < 1 || spec.height < 1) {
    problems.push_back("grid dimensions must be positive");
    return problems;
  }
  Room room(spec);
  for (Cell c : spec.obstacles) {
    if (!room.in_bounds(c)) problems.push_back("obstacle " + where(c) + " is out of bounds");
  }
  for (const auto& [a, b] : spec.walls) {
    if (!room.in_bounds(a) || !room.in_bounds(b) || !adjacent(a, b)) {
      problems.push_back("wall " + where(a) + "-" + where(b) + " does not separate two adjacent cells");
    }
  }
  if (!room.in_bounds(spec.goal)) problems.push_back("goal " + where(spec.goal) + " is out of bounds");
  else if (!room.free(spec.goal)) problems.push_back("goal " + where(spec.goal) + " is an obstacle");
  if (scale) {
    if (!scale->find(spec.neighbor_utility)) problems.push_back("neighbour utility label is not on the scale");
    if (!scale->find(spec.slip)) problems.push_back("slip label is not on the scale");
  }
  return problems;
}

}  // namespace detail

/// Builds the room model. Throws InvalidArgument on an invalid spec.
inline PiPomdpModel generate_gridworld(const GridworldSpec& spec) {
  if (auto p = detail::check_spec(spec, nullptr); !p.empty()) throw InvalidArgument(p.front());
  Scale scale(spec.scale_labels);
  if (auto p = detail::check_spec(spec, &scale); !p.empty()) throw InvalidArgument(p.front());
  detail::Room room(spec);

  std::vector<Cell> cells;
  std::vector<std::string> names;
  for (int r = 1; r <= spec.height; ++r) {
    for (int c = 1; c <= spec.width; ++c) {
      if (!room.free({r, c})) continue;
      cells.push_back({r, c});
      names.push_back(cell_name(spec, {r, c}));
    }
  }
  auto index = [&](Cell c) {
    return static_cast<StateId>(std::find(cells.begin(), cells.end(), c) - cells.begin());
  };

  PiMdpModel mdp(scale, names, std::vector<std::string>(kGridActions.begin(), kGridActions.end()));
  const Level top = scale.top();
  const Level slip = scale.parse(spec.slip);
  constexpr std::array<std::pair<int, int>, 5> moves{{{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
  for (Cell from : cells) {
    StateId s = index(from);
    for (ActionId a = 0; a < moves.size(); ++a) {
      auto [dr, dc] = moves[a];
      Cell target{from.row + dr, from.col + dc};
      if (a == 0 || !room.open(from, target)) {
        mdp.set_transition(s, a, s, top);
        continue;
      }
      mdp.set_transition(s, a, index(target), top);
      for (int side : {-1, 1}) {
        Cell lateral = dr != 0 ? Cell{target.row, target.col + side} : Cell{target.row + side, target.col};
        if (room.open(target, lateral)) mdp.set_transition(s, a, index(lateral), slip);
      }
    }
  }
  mdp.set_utility(index(spec.goal), top);
  const Level near = scale.parse(spec.neighbor_utility);
  for (auto [dr, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
    Cell n{spec.goal.row + dr, spec.goal.col + dc};
    if (room.free(n)) mdp.set_utility(index(n), near);
  }

  // Observation per cell.
  std::vector<std::string> obs_of(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Cell c = cells[i];
    if (spec.observation == ObservationMode::full) {
      obs_of[i] = "at-" + names[i];
      continue;
    }
    std::string pattern = "walls-";
    const std::array<std::pair<char, Cell>, 4> sides{{{'N', {c.row - 1, c.col}},
                                                      {'E', {c.row, c.col + 1}},
                                                      {'S', {c.row + 1, c.col}},
                                                      {'W', {c.row, c.col - 1}}}};
    for (const auto& [letter, other] : sides) pattern += room.open(c, other) ? '-' : letter;
    obs_of[i] = pattern;
  }
  std::vector<std::string> observations = obs_of;
  if (spec.observation == ObservationMode::walls) {
    std::sort(observations.begin(), observations.end());
    observations.erase(std::unique(observations.begin(), observations.end()), observations.end());
  }
  PiPomdpModel model(std::move(mdp), observations);
  for (StateId s = 0; s < cells.size(); ++s) {
    ObsId o = *model.find_observation(obs_of[s]);
    for (ActionId a = 0; a < model.num_actions(); ++a) model.set_observation(s, a, o, top);
  }
  return model;
}

}  // namespace qualplan
