#include "sfnav/imitation_train.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "sfnav/evaluate.hpp"
#include "sfnav/nn/adam.hpp"

namespace sfnav {

namespace {

double holdout_accuracy(const ImitationModel& model, const Tensor& states,
                        const std::vector<int>& labels,
                        const std::vector<std::size_t>& rows) {
    if (rows.empty()) return 0.0;
    const Index input_dim = states.dim(1);
    Tensor batch = Tensor::zeros({static_cast<Index>(rows.size()), input_dim});
    for (std::size_t b = 0; b < rows.size(); ++b) {
        std::copy(states.data.begin() + rows[b] * input_dim,
                  states.data.begin() + (rows[b] + 1) * input_dim,
                  batch.data.begin() + b * input_dim);
    }
    const Tensor z = model.logits_batch(batch);
    const Index a_count = z.dim(1);
    int correct = 0;
    for (std::size_t b = 0; b < rows.size(); ++b) {
        const int pred = argmax_lowest(std::span<const double>(
            z.data.data() + b * a_count, a_count));
        if (pred == labels[rows[b]]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(rows.size());
}

} // namespace

ImitationOutcome run_imitation(ImitationModel& model, const MazeMap& map,
                               const EnvParams& env_params, const TrainSchedule& schedule,
                               int n_samples, double target_accuracy,
                               double holdout_fraction, std::uint64_t seed,
                               bool emit_wall_clock) {
    schedule.validate();
    if (n_samples < 10) throw ConfigError("imitation needs at least 10 samples");

    Rng data_rng = Rng::stream(seed, 21);
    const LabeledDataset ds = build_imitation_dataset(map, env_params, n_samples, data_rng);

    // shuffled holdout split
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    Rng split_rng = Rng::stream(seed, 22);
    for (std::size_t j = 0; j + 1 < order.size(); ++j) {
        std::swap(order[j], order[j + rng_index(split_rng, order.size() - j)]);
    }
    const std::size_t holdout_n =
        std::max<std::size_t>(1, static_cast<std::size_t>(ds.size() * holdout_fraction));
    const std::vector<std::size_t> holdout(order.begin(), order.begin() + holdout_n);
    const std::vector<std::size_t> train(order.begin() + holdout_n, order.end());

    nn::AdamOptimizer opt(model.trainable_params(), schedule.learning_rate);
    Rng batch_rng = Rng::stream(seed, 23);

    const Index input_dim = ds.states.dim(1);
    const long total_updates =
        (schedule.total_steps - schedule.warmup_steps) / schedule.update_every;
    const long updates_per_eval = std::max<long>(1, schedule.eval_every / schedule.update_every);

    ImitationOutcome outcome;
    const auto t_start = std::chrono::steady_clock::now();
    int streak = 0;
    long streak_first_step = 0;
    int eval_count = 0;

    for (long u = 1; u <= total_updates; ++u) {
        Tensor batch = Tensor::zeros({static_cast<Index>(schedule.batch_size), input_dim});
        std::vector<int> labels(schedule.batch_size);
        for (int b = 0; b < schedule.batch_size; ++b) {
            const std::size_t row = train[rng_index(batch_rng, train.size())];
            std::copy(ds.states.data.begin() + row * input_dim,
                      ds.states.data.begin() + (row + 1) * input_dim,
                      batch.data.begin() + static_cast<Index>(b) * input_dim);
            labels[b] = ds.labels[row];
        }
        opt.zero_grad();
        model.ce_loss(batch, labels);
        opt.step();
        outcome.updates = u;

        if (u % updates_per_eval == 0) {
            const double acc = holdout_accuracy(model, ds.states, ds.labels, holdout);
            outcome.accuracy_curve.emplace_back(u, acc);
            if (!outcome.updates_to_target_accuracy && acc >= target_accuracy) {
                outcome.updates_to_target_accuracy = u;
            }

            ImitationPolicy policy(model);
            const std::uint64_t eval_seed =
                Rng::stream(seed, 5000 + static_cast<std::uint64_t>(eval_count)).next_u64();
            ++eval_count;
            const EvalStats st = evaluate(policy, map, env_params,
                                          schedule.eval_episodes, eval_seed);
            const long step = schedule.warmup_steps + u * schedule.update_every;

            MetricsRow row;
            row.step = step;
            row.task_id = 0;
            row.mean_reward = st.mean_reward;
            row.std_reward = st.std_reward;
            row.success_ratio = st.success_ratio();
            row.mean_steps = st.mean_steps;
            row.epsilon = 0.0;
            if (emit_wall_clock) {
                row.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t_start)
                                  .count();
            }
            outcome.metrics.push_back(row);

            if (st.success_ratio() >= schedule.converge_threshold) {
                if (streak == 0) streak_first_step = step;
                ++streak;
                if (streak >= schedule.converge_consecutive && !outcome.converged_at) {
                    outcome.converged_at = streak_first_step;
                }
            } else {
                streak = 0;
            }
            if (schedule.early_stop && outcome.converged_at &&
                outcome.updates_to_target_accuracy) {
                break;
            }
        }
    }
    if (!outcome.accuracy_curve.empty()) {
        outcome.final_holdout_accuracy = outcome.accuracy_curve.back().second;
    } else {
        outcome.final_holdout_accuracy = holdout_accuracy(model, ds.states, ds.labels, holdout);
    }
    return outcome;
}

} // namespace sfnav
