#pragma once

#include "sfnav/maze.hpp"
#include "sfnav/sensor.hpp"

namespace sfnav {

struct EnvParams {
    SensorParams sensor;
    int history = 4;
    double slip_prob = 0.0; // chance an action degrades to Stand
    int max_steps = 200;    // episode truncation (terminal stays false)

    int input_dim() const { return history * 2 * sensor.rays; }
};

struct StepResult {
    StackedState state;
    double reward = 0.0;
    bool terminal = false;
    bool collided = false;
    Pose pose; // ground truth, for oracles and analysis only
};

class MazeEnv {
public:
    MazeEnv(MazeMap map, EnvParams params, std::uint64_t seed);

    const StackedState& reset();
    StepResult step(Action action);

    bool episode_over() const { return terminal_ || truncated_; }
    bool terminal() const { return terminal_; }
    bool truncated() const { return truncated_; }
    int steps_in_episode() const { return steps_; }

    const MazeMap& map() const { return map_; }
    const EnvParams& params() const { return params_; }
    const Pose& pose() const { return pose_; }
    const StackedState& state() const { return state_; }
    int input_dim() const { return params_.input_dim(); }

private:
    MazeMap map_;
    EnvParams params_;
    Rng rng_;
    Pose pose_;
    StackedState state_;
    int steps_ = 0;
    bool terminal_ = false;
    bool truncated_ = false;
};

} // namespace sfnav
