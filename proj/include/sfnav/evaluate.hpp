#pragma once

#include <cstdint>

#include "sfnav/policy.hpp"

namespace sfnav {

struct EvalStats {
    int successes = 0;
    int episodes = 0;
    double mean_reward = 0.0;
    double std_reward = 0.0;
    double mean_steps = 0.0;
    double std_steps = 0.0;

    double success_ratio() const {
        return episodes > 0 ? static_cast<double>(successes) / episodes : 0.0;
    }
};

// Greedy rollouts from n random starts with slip disabled. Success means the
// goal is reached within max_steps; failed episodes count their full step
// budget and accumulated reward. Throws ConfigError for n_episodes <= 0.
EvalStats evaluate(Policy& policy, const MazeMap& map, const EnvParams& base_params,
                   int n_episodes, std::uint64_t seed);

} // namespace sfnav
