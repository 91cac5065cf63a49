#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "sfnav/checkpoint.hpp"
#include "sfnav/evaluate.hpp"
#include "sfnav/metrics.hpp"
#include "sfnav/nn/adam.hpp"
#include "sfnav/replay.hpp"
#include "sfnav/schedule.hpp"

namespace sfnav {

enum class AgentKind { Sf, Dqn, DqnFinetune, DqnFixFeature, Imitation, AStarOracle, Random };

const char* agent_kind_name(AgentKind k);
AgentKind agent_kind_from_name(const std::string& name);

struct SfTrainOptions {
    // Train every head on current-task samples (full multi-task TD objective)
    // instead of storing old heads frozen.
    bool multitask_td = false;
    // Terminal TD targets count the arrival state's features once
    // (y = phi_s + gamma*phi_s'). Keeps the goal reward visible to the
    // state-reward factorization under this environment's action-dependent
    // rewards; switchable to the strict cut y = phi_s.
    bool terminal_adds_next_phi = true;
    int retained_per_task = 2048;
    bool copy_init_on_transfer = true;
};

struct UpdateStats {
    std::optional<double> loss_sf;
    std::optional<double> loss_phi;
    std::optional<double> loss_q;
};

// What the generic training loop needs from a learner.
class LearnerAgent {
public:
    virtual ~LearnerAgent() = default;

    virtual Action act(const StackedState& state, const Pose& pose, double epsilon,
                       Rng& rng) = 0;
    virtual void record(Transition t) = 0;
    virtual UpdateStats update(Rng& rng) = 0;
    virtual void sync_targets() = 0;
    virtual bool learns() const { return true; }

    virtual std::unique_ptr<Policy> greedy_policy() const = 0;
    // Policy for evaluating an earlier task after transfer.
    virtual std::unique_ptr<Policy> task_policy(int task) const = 0;
    // Called when training moves to the next task in a transfer sequence.
    virtual void begin_task(int stage_index, Rng& rng) = 0;

    virtual CheckpointMeta meta_template() const = 0;
    virtual std::vector<nn::NamedParam> checkpoint_params() = 0;
};

class SfAgent : public LearnerAgent {
public:
    SfAgent(SfModelConfig cfg, const TrainSchedule& schedule, SfTrainOptions options,
            std::uint64_t init_seed);

    Action act(const StackedState& state, const Pose&, double epsilon, Rng& rng) override;
    void record(Transition t) override;
    UpdateStats update(Rng& rng) override;
    void sync_targets() override;
    std::unique_ptr<Policy> greedy_policy() const override;
    std::unique_ptr<Policy> task_policy(int task) const override;
    void begin_task(int stage_index, Rng& rng) override;
    CheckpointMeta meta_template() const override;
    std::vector<nn::NamedParam> checkpoint_params() override;

    SfModel& model() { return model_; }
    const SfModel& model() const { return model_; }
    const std::vector<Tensor>& retained_states() const { return retained_; }

private:
    void rebuild_optimizers();

    SfModel model_;
    TrainSchedule sched_;
    SfTrainOptions opt_;
    ReplayBuffer replay_;
    std::vector<Tensor> retained_; // one state batch per completed task
    Rng init_rng_;
    std::unique_ptr<nn::AdamOptimizer> td_opt_;
    std::unique_ptr<nn::AdamOptimizer> phi_opt_;
};

class DqnAgent : public LearnerAgent {
public:
    DqnAgent(DqnConfig cfg, const TrainSchedule& schedule, DqnTransferMode mode,
             std::uint64_t init_seed);

    Action act(const StackedState& state, const Pose&, double epsilon, Rng& rng) override;
    void record(Transition t) override;
    UpdateStats update(Rng& rng) override;
    void sync_targets() override;
    std::unique_ptr<Policy> greedy_policy() const override;
    std::unique_ptr<Policy> task_policy(int task) const override;
    void begin_task(int stage_index, Rng& rng) override;
    CheckpointMeta meta_template() const override;
    std::vector<nn::NamedParam> checkpoint_params() override;

    DqnModel& model() { return model_; }
    const DqnModel& model() const { return model_; }

private:
    DqnModel model_;
    TrainSchedule sched_;
    DqnTransferMode mode_;
    ReplayBuffer replay_;
    // FixFeature preserves old-task policies exactly; keep the pre-transfer
    // model per completed task so those policies can be evaluated.
    std::vector<DqnModel> snapshots_;
    std::unique_ptr<nn::AdamOptimizer> opt_;
};

// Non-learning reference agents (planner oracle / uniform random).
class ScriptedAgent : public LearnerAgent {
public:
    ScriptedAgent(AgentKind kind, const MazeMap* map);

    Action act(const StackedState& state, const Pose& pose, double epsilon,
               Rng& rng) override;
    void record(Transition) override {}
    UpdateStats update(Rng&) override { return {}; }
    void sync_targets() override {}
    bool learns() const override { return false; }
    std::unique_ptr<Policy> greedy_policy() const override;
    std::unique_ptr<Policy> task_policy(int) const override;
    void begin_task(int, Rng&) override {}
    CheckpointMeta meta_template() const override { return {}; }
    std::vector<nn::NamedParam> checkpoint_params() override { return {}; }
    void set_map(const MazeMap* map) { map_ = map; }

private:
    AgentKind kind_;
    const MazeMap* map_;
};

struct RunContext {
    int task_id = 0;
    long step_offset = 0;
    bool emit_wall_clock = false;
    std::function<void()> on_eval; // periodic checkpoint hook
};

struct RunResult {
    std::vector<MetricsRow> metrics;
    std::optional<long> converged_at; // stage-relative env step
    long env_steps = 0;
    long updates = 0;
};

// One training stage: act / store / alternating updates / target syncs /
// periodic greedy evaluation. Deterministic given the seed.
RunResult run_training(LearnerAgent& agent, MazeEnv& env, const TrainSchedule& schedule,
                       std::uint64_t seed, const RunContext& ctx = {});

struct TransferStage {
    MazeMap map;
    EnvParams env;
    TrainSchedule schedule;
};

struct TransferResult {
    std::vector<MetricsRow> metrics;
    std::vector<MatrixRow> matrix;
    std::vector<std::optional<long>> converged_at; // per stage, stage-relative
    std::unique_ptr<LearnerAgent> agent;
};

// Sequential multi-task training with per-stage evaluation rows, pre-transfer
// matrix rows and post-run re-evaluation of every earlier task.
TransferResult run_transfer_sequence(std::vector<TransferStage> stages, AgentKind kind,
                                     const SfModelConfig& model_cfg,
                                     const SfTrainOptions& sf_options,
                                     std::uint64_t seed, bool emit_wall_clock = false,
                                     const std::function<void()>& on_eval = {});

std::unique_ptr<LearnerAgent> make_agent(AgentKind kind, const SfModelConfig& model_cfg,
                                         const TrainSchedule& schedule,
                                         const SfTrainOptions& sf_options,
                                         const MazeMap* first_map, std::uint64_t seed);

TransitionBatch assemble_batch(const ReplayBuffer& replay, int batch_size, Rng& rng);

} // namespace sfnav
