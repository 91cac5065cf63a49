#pragma once

#include <vector>

#include "sfnav/maze.hpp"

namespace sfnav {

// Planning happens over (x, y, heading) states with unit-cost actions
// {Forward, TurnLeft, TurnRight}; colliding forward moves are not edges.

inline int pose_state_index(const MazeMap& map, const Pose& p) {
    return (p.y * map.width + p.x) * 4 + static_cast<int>(p.heading);
}

// Exact actions-to-goal for every (x, y, heading) state, via multi-source BFS
// from the goal over reversed edges. Wall cells carry -1.
std::vector<int> distance_to_goal(const MazeMap& map);

// Minimal-length action sequence from start to the goal cell. Among optimal
// plans, returns the lexicographically smallest under Forward < TurnLeft <
// TurnRight. The optimal cost is established by A* with a Manhattan heuristic.
std::vector<Action> shortest_path(const MazeMap& map, const Pose& start);

// First action of shortest_path (deterministic under the tie-break rule).
Action optimal_action(const MazeMap& map, const Pose& pose);

} // namespace sfnav
