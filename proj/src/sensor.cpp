#include "sfnav/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfnav {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RayHit {
    double distance = 0.0;
    bool goal_seen = false;
};

// Clockwise quarter turns applied to a direction vector; heading North is the
// identity, so 90-degree pose rotations permute ray directions exactly.
void rotate_quarters(double& dx, double& dy, int quarters) {
    for (int i = 0; i < quarters; ++i) {
        const double nx = -dy;
        const double ny = dx;
        dx = nx;
        dy = ny;
    }
}

RayHit trace_ray(const MazeMap& map, int start_x, int start_y, double dx, double dy) {
    RayHit hit;
    const double inf = std::numeric_limits<double>::infinity();
    const double ox = start_x + 0.5;
    const double oy = start_y + 0.5;

    int cx = start_x;
    int cy = start_y;
    hit.goal_seen = map.at(cx, cy) == Cell::Goal;

    const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
    double t_max_x = inf;
    double t_max_y = inf;
    double t_delta_x = inf;
    double t_delta_y = inf;
    if (step_x != 0) {
        const double edge = step_x > 0 ? (cx + 1 - ox) : (ox - cx);
        t_max_x = edge / std::abs(dx);
        t_delta_x = 1.0 / std::abs(dx);
    }
    if (step_y != 0) {
        const double edge = step_y > 0 ? (cy + 1 - oy) : (oy - cy);
        t_max_y = edge / std::abs(dy);
        t_delta_y = 1.0 / std::abs(dy);
    }

    while (true) {
        if (t_max_x == t_max_y) {
            // exact corner crossing: inspect both adjacent cells, then step
            // diagonally so the result is invariant under quarter rotations
            const double t = t_max_x;
            const Cell a = map.at(cx + step_x, cy);
            const Cell b = map.at(cx, cy + step_y);
            if (a == Cell::Wall || b == Cell::Wall) {
                hit.distance = t;
                return hit;
            }
            hit.goal_seen = hit.goal_seen || a == Cell::Goal || b == Cell::Goal;
            cx += step_x;
            cy += step_y;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        } else if (t_max_x < t_max_y) {
            const double t = t_max_x;
            cx += step_x;
            t_max_x += t_delta_x;
            if (map.at(cx, cy) == Cell::Wall) {
                hit.distance = t;
                return hit;
            }
        } else {
            const double t = t_max_y;
            cy += step_y;
            t_max_y += t_delta_y;
            if (map.at(cx, cy) == Cell::Wall) {
                hit.distance = t;
                return hit;
            }
        }
        if (map.at(cx, cy) == Cell::Goal) hit.goal_seen = true;
    }
}

} // namespace

std::vector<double> Observation::flat() const {
    std::vector<double> out;
    out.reserve(rays.size() + goal_mask.size());
    out.insert(out.end(), rays.begin(), rays.end());
    out.insert(out.end(), goal_mask.begin(), goal_mask.end());
    return out;
}

Observation observe(const MazeMap& map, const Pose& pose, const SensorParams& params) {
    if (params.rays < 2) throw DimensionError("observe: need at least 2 rays");
    Observation obs;
    obs.rays.resize(params.rays);
    obs.goal_mask.resize(params.rays);

    const double fov = params.fov_deg * kPi / 180.0;
    const int quarters = static_cast<int>(pose.heading);
    for (int j = 0; j < params.rays; ++j) {
        const double rel = -fov / 2.0 + fov * j / (params.rays - 1);
        // heading-relative direction with North as base; positive rel sweeps right
        double dx = std::sin(rel);
        double dy = -std::cos(rel);
        rotate_quarters(dx, dy, quarters);
        const RayHit hit = trace_ray(map, pose.x, pose.y, dx, dy);
        obs.rays[j] = std::min(hit.distance / params.max_range, 1.0);
        obs.goal_mask[j] = hit.goal_seen ? 1.0 : 0.0;
    }
    return obs;
}

StackedState::StackedState(int history, int obs_dim)
    : history_(history), obs_dim_(obs_dim),
      flat_(static_cast<std::size_t>(history) * obs_dim, 0.0) {}

void StackedState::reset(const Observation& first) {
    const std::vector<double> frame = first.flat();
    for (int h = 0; h < history_; ++h) {
        std::copy(frame.begin(), frame.end(),
                  flat_.begin() + static_cast<std::ptrdiff_t>(h) * obs_dim_);
    }
}

void StackedState::push(const Observation& next) {
    std::copy(flat_.begin() + obs_dim_, flat_.end(), flat_.begin());
    const std::vector<double> frame = next.flat();
    std::copy(frame.begin(), frame.end(), flat_.end() - obs_dim_);
}

} // namespace sfnav
