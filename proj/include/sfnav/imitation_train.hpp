#pragma once

#include "sfnav/imitation.hpp"
#include "sfnav/metrics.hpp"
#include "sfnav/schedule.hpp"

namespace sfnav {

struct ImitationOutcome {
    std::vector<MetricsRow> metrics;
    std::optional<long> converged_at; // aligned-step convergence, like RL runs
    double final_holdout_accuracy = 0.0;
    std::optional<long> updates_to_target_accuracy;
    std::vector<std::pair<long, double>> accuracy_curve; // (updates, holdout acc)
    long updates = 0;
};

// Supervised training on planner labels. Metric rows are emitted on the RL
// step axis (step = warmup + updates * update_every) so update counts align
// across learners; rollout statistics come from greedy evaluation.
ImitationOutcome run_imitation(ImitationModel& model, const MazeMap& map,
                               const EnvParams& env_params, const TrainSchedule& schedule,
                               int n_samples, double target_accuracy, double holdout_fraction,
                               std::uint64_t seed, bool emit_wall_clock = false);

} // namespace sfnav
