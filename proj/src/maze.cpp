#include "sfnav/maze.hpp"

#include <deque>
#include <fstream>
#include <sstream>

namespace sfnav {

int MazeMap::free_cell_count() const {
    int n = 0;
    for (Cell c : cells) {
        if (c == Cell::Free) ++n;
    }
    return n;
}

MazeMap load_map(const std::string& text, std::string name) {
    std::vector<std::string> rows;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(line);
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();

    if (rows.empty()) throw MapError("map '" + name + "': empty map text");
    const std::size_t width = rows.front().size();
    for (std::size_t y = 0; y < rows.size(); ++y) {
        if (rows[y].size() != width) {
            throw MapError("map '" + name + "': ragged row " + std::to_string(y));
        }
    }

    MazeMap map;
    map.name = std::move(name);
    map.width = static_cast<int>(width);
    map.height = static_cast<int>(rows.size());
    map.cells.resize(static_cast<std::size_t>(map.width) * map.height);

    int goals = 0;
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            Cell c;
            switch (rows[y][x]) {
            case '#': c = Cell::Wall; break;
            case '.': c = Cell::Free; break;
            case 'G':
                c = Cell::Goal;
                ++goals;
                map.goal_x = x;
                map.goal_y = y;
                break;
            default:
                throw MapError("map '" + map.name + "': invalid character '" +
                               std::string(1, rows[y][x]) + "' at row " +
                               std::to_string(y));
            }
            map.cells[static_cast<std::size_t>(y) * map.width + x] = c;
        }
    }

    if (goals != 1) {
        throw MapError("map '" + map.name + "': expected exactly one goal, found " +
                       std::to_string(goals));
    }
    for (int x = 0; x < map.width; ++x) {
        if (map.at(x, 0) != Cell::Wall || map.at(x, map.height - 1) != Cell::Wall) {
            throw MapError("map '" + map.name + "': border is not fully walled");
        }
    }
    for (int y = 0; y < map.height; ++y) {
        if (map.at(0, y) != Cell::Wall || map.at(map.width - 1, y) != Cell::Wall) {
            throw MapError("map '" + map.name + "': border is not fully walled");
        }
    }
    if (map.free_cell_count() == 0) {
        throw MapError("map '" + map.name + "': no free cell (goal unreachable)");
    }

    // Flood fill from the goal over walkable cells; every free cell must be hit.
    std::vector<char> seen(map.cells.size(), 0);
    std::deque<std::pair<int, int>> frontier;
    frontier.emplace_back(map.goal_x, map.goal_y);
    seen[static_cast<std::size_t>(map.goal_y) * map.width + map.goal_x] = 1;
    while (!frontier.empty()) {
        auto [cx, cy] = frontier.front();
        frontier.pop_front();
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int nx = cx + dx[k];
            const int ny = cy + dy[k];
            if (!map.in_bounds(nx, ny) || !map.walkable(nx, ny)) continue;
            const std::size_t idx = static_cast<std::size_t>(ny) * map.width + nx;
            if (!seen[idx]) {
                seen[idx] = 1;
                frontier.emplace_back(nx, ny);
            }
        }
    }
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (map.at(x, y) == Cell::Free &&
                !seen[static_cast<std::size_t>(y) * map.width + x]) {
                throw MapError("map '" + map.name + "': free cell (" +
                               std::to_string(x) + "," + std::to_string(y) +
                               ") cannot reach the goal");
            }
        }
    }
    return map;
}

MazeMap load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MapError("cannot open map file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string name = path;
    const std::size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    const std::size_t dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return load_map(buf.str(), name);
}

Heading turn_left(Heading h) {
    return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}

Heading turn_right(Heading h) {
    return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}

std::pair<int, int> forward_delta(Heading h) {
    switch (h) {
    case Heading::North: return {0, -1};
    case Heading::East: return {1, 0};
    case Heading::South: return {0, 1};
    case Heading::West: return {-1, 0};
    }
    return {0, 0};
}

const char* action_name(Action a) {
    switch (a) {
    case Action::Stand: return "Stand";
    case Action::TurnLeft: return "TurnLeft";
    case Action::TurnRight: return "TurnRight";
    case Action::Forward: return "Forward";
    }
    return "?";
}

const char* heading_name(Heading h) {
    switch (h) {
    case Heading::North: return "N";
    case Heading::East: return "E";
    case Heading::South: return "S";
    case Heading::West: return "W";
    }
    return "?";
}

MoveOutcome apply_action(const MazeMap& map, const Pose& pose, Action action) {
    MoveOutcome out;
    out.pose = pose;
    out.reward = kStepReward;
    switch (action) {
    case Action::Stand:
        break;
    case Action::TurnLeft:
        out.pose.heading = turn_left(pose.heading);
        break;
    case Action::TurnRight:
        out.pose.heading = turn_right(pose.heading);
        break;
    case Action::Forward: {
        auto [dx, dy] = forward_delta(pose.heading);
        const int nx = pose.x + dx;
        const int ny = pose.y + dy;
        const Cell target = map.at(nx, ny);
        if (target == Cell::Wall) {
            out.reward = kCollisionReward;
            out.collided = true;
        } else {
            out.pose.x = nx;
            out.pose.y = ny;
            if (target == Cell::Goal) {
                out.reward = kGoalReward;
                out.terminal = true;
            }
        }
        break;
    }
    }
    return out;
}

Pose random_start(const MazeMap& map, Rng& rng) {
    const int n_free = map.free_cell_count();
    int pick = rng.uniform_int(n_free);
    Pose pose;
    for (int y = 0; y < map.height && pick >= 0; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (map.at(x, y) == Cell::Free) {
                if (pick == 0) {
                    pose.x = x;
                    pose.y = y;
                    pose.heading = static_cast<Heading>(rng.uniform_int(4));
                    return pose;
                }
                --pick;
            }
        }
    }
    throw MapError("random_start: map has no free cell");
}

} // namespace sfnav
