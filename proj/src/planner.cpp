#include "sfnav/planner.hpp"

#include <cstdlib>
#include <deque>
#include <queue>
#include <tuple>

namespace sfnav {

namespace {

struct Successor {
    Pose pose;
    bool valid = false;
};

Successor forward_successor(const MazeMap& map, const Pose& p) {
    auto [dx, dy] = forward_delta(p.heading);
    const int nx = p.x + dx;
    const int ny = p.y + dy;
    Successor s;
    if (map.walkable(nx, ny)) {
        s.pose = {nx, ny, p.heading};
        s.valid = true;
    }
    return s;
}

Pose apply_plan_action(const MazeMap& map, const Pose& p, Action a) {
    switch (a) {
    case Action::Forward: {
        const Successor s = forward_successor(map, p);
        return s.pose;
    }
    case Action::TurnLeft: return {p.x, p.y, turn_left(p.heading)};
    case Action::TurnRight: return {p.x, p.y, turn_right(p.heading)};
    default: return p;
    }
}

int manhattan_to_goal(const MazeMap& map, const Pose& p) {
    return std::abs(p.x - map.goal_x) + std::abs(p.y - map.goal_y);
}

// Optimal cost from start to any goal-cell state; the planner proper.
int astar_cost(const MazeMap& map, const Pose& start) {
    const int n_states = map.width * map.height * 4;
    std::vector<int> g(n_states, -1);
    using Entry = std::tuple<int, int, int>; // f, insertion seq, state
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

    const int s0 = pose_state_index(map, start);
    g[s0] = 0;
    int seq = 0;
    open.emplace(manhattan_to_goal(map, start), seq++, s0);

    while (!open.empty()) {
        auto [f, _, si] = open.top();
        open.pop();
        const int heading = si % 4;
        const int cell = si / 4;
        Pose p{cell % map.width, cell / map.width, static_cast<Heading>(heading)};
        if (p.x == map.goal_x && p.y == map.goal_y) return g[si];
        if (f > g[si] + manhattan_to_goal(map, p)) continue; // stale entry

        const Action actions[3] = {Action::Forward, Action::TurnLeft, Action::TurnRight};
        for (Action a : actions) {
            if (a == Action::Forward && !forward_successor(map, p).valid) continue;
            const Pose q = apply_plan_action(map, p, a);
            const int qi = pose_state_index(map, q);
            const int ng = g[si] + 1;
            if (g[qi] == -1 || ng < g[qi]) {
                g[qi] = ng;
                open.emplace(ng + manhattan_to_goal(map, q), seq++, qi);
            }
        }
    }
    throw MapError("shortest_path: goal unreachable from start");
}

} // namespace

std::vector<int> distance_to_goal(const MazeMap& map) {
    const int n_states = map.width * map.height * 4;
    std::vector<int> dist(n_states, -1);
    std::deque<int> frontier;
    for (int h = 0; h < 4; ++h) {
        const Pose gp{map.goal_x, map.goal_y, static_cast<Heading>(h)};
        const int gi = pose_state_index(map, gp);
        dist[gi] = 0;
        frontier.push_back(gi);
    }
    while (!frontier.empty()) {
        const int si = frontier.front();
        frontier.pop_front();
        const int heading = si % 4;
        const int cell = si / 4;
        const Pose p{cell % map.width, cell / map.width, static_cast<Heading>(heading)};

        // predecessors: reverse of Forward / TurnLeft / TurnRight
        std::vector<Pose> preds;
        auto [dx, dy] = forward_delta(p.heading);
        const int px = p.x - dx;
        const int py = p.y - dy;
        if (map.in_bounds(px, py) && map.walkable(px, py)) {
            preds.push_back({px, py, p.heading});
        }
        preds.push_back({p.x, p.y, turn_right(p.heading)}); // TurnLeft pre-image
        preds.push_back({p.x, p.y, turn_left(p.heading)});  // TurnRight pre-image

        for (const Pose& q : preds) {
            const int qi = pose_state_index(map, q);
            if (dist[qi] == -1) {
                dist[qi] = dist[si] + 1;
                frontier.push_back(qi);
            }
        }
    }
    return dist;
}

std::vector<Action> shortest_path(const MazeMap& map, const Pose& start) {
    const int cost = astar_cost(map, start);
    const std::vector<int> dist = distance_to_goal(map);

    // Lexicographically smallest optimal plan: repeatedly take the first
    // action (Forward < TurnLeft < TurnRight) that decreases distance-to-goal.
    std::vector<Action> plan;
    plan.reserve(cost);
    Pose p = start;
    while (!(p.x == map.goal_x && p.y == map.goal_y)) {
        const int d = dist[pose_state_index(map, p)];
        const Action actions[3] = {Action::Forward, Action::TurnLeft, Action::TurnRight};
        bool advanced = false;
        for (Action a : actions) {
            if (a == Action::Forward && !forward_successor(map, p).valid) continue;
            const Pose q = apply_plan_action(map, p, a);
            if (dist[pose_state_index(map, q)] == d - 1) {
                plan.push_back(a);
                p = q;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw MapError("shortest_path: no descending action (corrupt map)");
    }
    if (static_cast<int>(plan.size()) != cost) {
        throw NumericsError("shortest_path: A* cost disagrees with BFS distance field");
    }
    return plan;
}

Action optimal_action(const MazeMap& map, const Pose& pose) {
    if (pose.x == map.goal_x && pose.y == map.goal_y) {
        throw MapError("optimal_action: already at goal");
    }
    return shortest_path(map, pose).front();
}

} // namespace sfnav
