#include "sfnav/evaluate.hpp"

#include <cmath>

namespace sfnav {

EvalStats evaluate(Policy& policy, const MazeMap& map, const EnvParams& base_params,
                   int n_episodes, std::uint64_t seed) {
    if (n_episodes <= 0) {
        throw ConfigError("evaluate: n_episodes must be positive");
    }
    EnvParams params = base_params;
    params.slip_prob = 0.0;

    MazeEnv env(map, params, seed);
    Rng policy_rng = Rng::stream(seed, 0x9a1f);

    EvalStats stats;
    stats.episodes = n_episodes;
    double sum_r = 0.0, sum_r2 = 0.0, sum_n = 0.0, sum_n2 = 0.0;
    for (int ep = 0; ep < n_episodes; ++ep) {
        env.reset();
        double ep_reward = 0.0;
        while (!env.episode_over()) {
            const Action a = policy.act(env.state(), env.pose(), policy_rng);
            const StepResult r = env.step(a);
            ep_reward += r.reward;
        }
        if (env.terminal()) stats.successes += 1;
        const double steps = env.steps_in_episode();
        sum_r += ep_reward;
        sum_r2 += ep_reward * ep_reward;
        sum_n += steps;
        sum_n2 += steps * steps;
    }
    const double n = n_episodes;
    stats.mean_reward = sum_r / n;
    stats.std_reward = std::sqrt(std::max(0.0, sum_r2 / n - stats.mean_reward * stats.mean_reward));
    stats.mean_steps = sum_n / n;
    stats.std_steps = std::sqrt(std::max(0.0, sum_n2 / n - stats.mean_steps * stats.mean_steps));
    return stats;
}

} // namespace sfnav
