#pragma once

#include <vector>

#include "sfnav/maze.hpp"

namespace sfnav {

struct SensorParams {
    int rays = 16;
    double fov_deg = 180.0;
    double max_range = 10.0; // in cell units
};

// Egocentric ray-cast reading: per ray the normalized distance to the first
// wall (clamped to [0,1]) and a flag for a goal cell crossed before that wall.
struct Observation {
    std::vector<double> rays;
    std::vector<double> goal_mask;

    int obs_dim() const { return static_cast<int>(rays.size() + goal_mask.size()); }
    // layout: [rays..., goal_mask...]
    std::vector<double> flat() const;
};

// R rays spanning fov symmetrically around the heading, traced from the cell
// center on the continuous grid until the first wall boundary. Pure function
// of (map, pose, params). Requires params.rays >= 2.
Observation observe(const MazeMap& map, const Pose& pose, const SensorParams& params);

// Last H observations, oldest first, as one flat vector. At episode start the
// initial observation is replicated H times.
class StackedState {
public:
    StackedState() = default;
    StackedState(int history, int obs_dim);

    void reset(const Observation& first);
    void push(const Observation& next);

    int history() const { return history_; }
    int obs_dim() const { return obs_dim_; }
    int flat_dim() const { return history_ * obs_dim_; }
    const std::vector<double>& flat() const { return flat_; }

private:
    int history_ = 0;
    int obs_dim_ = 0;
    std::vector<double> flat_;
};

} // namespace sfnav
