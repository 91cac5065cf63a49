#pragma once

#include <cstdint>

#include "sfnav/common.hpp"

namespace sfnav {

// Training cadence and exploration schedule shared by all learners.
struct TrainSchedule {
    long warmup_steps = 2000;
    long total_steps = 200000;
    int update_every = 4;          // env steps per update event
    long target_sync_every = 5000; // in updates
    long eval_every = 5000;        // in env steps
    int eval_episodes = 50;
    double epsilon_start = 1.0;
    double epsilon_end = 0.1;
    long epsilon_anneal_steps = 30000;
    double gamma = 0.99;
    int batch_size = 64;
    double learning_rate = 2.5e-4;
    long replay_capacity = 50000;

    // stop once success_ratio >= threshold for `consecutive` evaluations
    bool early_stop = false;
    double converge_threshold = 0.9;
    int converge_consecutive = 2;

    void validate() const;
};

// epsilon_start before warmup, linear to epsilon_end over the anneal window,
// constant after; monotone non-increasing.
double epsilon_at(const TrainSchedule& s, long env_step);

} // namespace sfnav
