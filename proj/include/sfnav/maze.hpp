#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sfnav/common.hpp"

namespace sfnav {

enum class Cell : std::uint8_t { Free, Wall, Goal };

enum class Heading : std::uint8_t { North, East, South, West };

enum class Action : std::uint8_t { Stand, TurnLeft, TurnRight, Forward };

inline constexpr int kNumActions = 4;

// Reward structure: -0.04 per step, -1.0 total for a colliding step (agent
// stays in place), +1.0 for the step that reaches the goal.
inline constexpr double kStepReward = -0.04;
inline constexpr double kCollisionReward = -1.0;
inline constexpr double kGoalReward = 1.0;

struct MazeMap {
    int width = 0;
    int height = 0;
    std::vector<Cell> cells; // row-major, cells[y * width + x]
    std::string name;
    int goal_x = -1;
    int goal_y = -1;

    Cell at(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    bool walkable(int x, int y) const { return at(x, y) != Cell::Wall; }
    int free_cell_count() const; // Free cells, excluding the goal
};

struct Pose {
    int x = 0;
    int y = 0;
    Heading heading = Heading::North;

    bool operator==(const Pose&) const = default;
};

// '#' wall, '.' free, 'G' goal. Validates: rectangular, closed border, exactly
// one goal, at least one free cell, every free cell connected to the goal.
// Throws MapError naming the violated invariant.
MazeMap load_map(const std::string& text, std::string name = "");
MazeMap load_map_file(const std::string& path);

Heading turn_left(Heading h);
Heading turn_right(Heading h);
// Unit displacement for a heading; y grows downward (ASCII row order).
std::pair<int, int> forward_delta(Heading h);

const char* action_name(Action a);
const char* heading_name(Heading h);

struct MoveOutcome {
    Pose pose;
    double reward = 0.0;
    bool terminal = false;
    bool collided = false;
};

// Deterministic transition rule (no slip). Stand/turn cost kStepReward;
// forward into free advances, into goal terminates with kGoalReward, into a
// wall stays put with kCollisionReward.
MoveOutcome apply_action(const MazeMap& map, const Pose& pose, Action action);

// Uniform over (free non-goal cell) x (4 headings).
Pose random_start(const MazeMap& map, Rng& rng);

} // namespace sfnav
