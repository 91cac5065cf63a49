#include "sfnav/env.hpp"

namespace sfnav {

MazeEnv::MazeEnv(MazeMap map, EnvParams params, std::uint64_t seed)
    : map_(std::move(map)), params_(params), rng_(seed),
      state_(params.history, 2 * params.sensor.rays) {
    reset();
}

const StackedState& MazeEnv::reset() {
    pose_ = random_start(map_, rng_);
    state_.reset(observe(map_, pose_, params_.sensor));
    steps_ = 0;
    terminal_ = false;
    truncated_ = false;
    return state_;
}

StepResult MazeEnv::step(Action action) {
    Action executed = action;
    if (params_.slip_prob > 0.0 && rng_.uniform() < params_.slip_prob) {
        executed = Action::Stand;
    }
    const MoveOutcome out = apply_action(map_, pose_, executed);
    pose_ = out.pose;
    state_.push(observe(map_, pose_, params_.sensor));
    steps_ += 1;
    terminal_ = out.terminal;
    truncated_ = !terminal_ && steps_ >= params_.max_steps;

    StepResult result;
    result.state = state_;
    result.reward = out.reward;
    result.terminal = out.terminal;
    result.collided = out.collided;
    result.pose = pose_;
    return result;
}

} // namespace sfnav
