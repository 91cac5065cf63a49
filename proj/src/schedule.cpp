#include "sfnav/schedule.hpp"

#include <string>

namespace sfnav {

void TrainSchedule::validate() const {
    if (warmup_steps < 0) throw ConfigError("warmup_steps must be >= 0");
    if (total_steps > 0 && warmup_steps >= total_steps) {
        throw ConfigError("warmup_steps must be smaller than total_steps");
    }
    if (update_every <= 0) throw ConfigError("update_every must be positive");
    if (target_sync_every <= 0) throw ConfigError("target_sync_every must be positive");
    if (eval_every <= 0) throw ConfigError("eval_every must be positive");
    if (eval_episodes <= 0) throw ConfigError("eval_episodes must be positive");
    if (epsilon_start < 0.0 || epsilon_start > 1.0) {
        throw ConfigError("epsilon_start must be in [0,1]");
    }
    if (epsilon_end < 0.0 || epsilon_end > 1.0) {
        throw ConfigError("epsilon_end must be in [0,1]");
    }
    if (epsilon_end > epsilon_start) {
        throw ConfigError("epsilon_end must not exceed epsilon_start");
    }
    if (epsilon_anneal_steps < 0) throw ConfigError("epsilon_anneal_steps must be >= 0");
    if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0,1)");
    if (batch_size <= 0) throw ConfigError("batch_size must be positive");
    if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
    if (replay_capacity <= 0) throw ConfigError("replay_capacity must be positive");
    if (converge_threshold < 0.0 || converge_threshold > 1.0) {
        throw ConfigError("converge_threshold must be in [0,1]");
    }
    if (converge_consecutive <= 0) {
        throw ConfigError("converge_consecutive must be positive");
    }
}

double epsilon_at(const TrainSchedule& s, long env_step) {
    if (env_step <= s.warmup_steps) return s.epsilon_start;
    if (s.epsilon_anneal_steps == 0) return s.epsilon_end;
    const long into = env_step - s.warmup_steps;
    if (into >= s.epsilon_anneal_steps) return s.epsilon_end;
    const double frac = static_cast<double>(into) / static_cast<double>(s.epsilon_anneal_steps);
    return s.epsilon_start + frac * (s.epsilon_end - s.epsilon_start);
}

} // namespace sfnav
