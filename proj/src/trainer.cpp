#include "sfnav/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace sfnav {

const char* agent_kind_name(AgentKind k) {
    switch (k) {
    case AgentKind::Sf: return "sf";
    case AgentKind::Dqn: return "dqn";
    case AgentKind::DqnFinetune: return "dqn-finetune";
    case AgentKind::DqnFixFeature: return "dqn-fixfeature";
    case AgentKind::Imitation: return "imitation";
    case AgentKind::AStarOracle: return "astar";
    case AgentKind::Random: return "random";
    }
    return "?";
}

AgentKind agent_kind_from_name(const std::string& name) {
    if (name == "sf") return AgentKind::Sf;
    if (name == "dqn") return AgentKind::Dqn;
    if (name == "dqn-finetune") return AgentKind::DqnFinetune;
    if (name == "dqn-fixfeature") return AgentKind::DqnFixFeature;
    if (name == "imitation") return AgentKind::Imitation;
    if (name == "astar") return AgentKind::AStarOracle;
    if (name == "random") return AgentKind::Random;
    throw ConfigError("unknown agent kind: " + name);
}

TransitionBatch assemble_batch(const ReplayBuffer& replay, int batch_size, Rng& rng) {
    if (replay.empty()) throw ConfigError("assemble_batch: replay buffer is empty");
    const Index input_dim = replay.at(0).state.size();
    const Index n = static_cast<Index>(batch_size);

    TransitionBatch batch;
    batch.states = Tensor::zeros({n, input_dim});
    batch.next_states = Tensor::zeros({n, input_dim});
    batch.actions.resize(n);
    batch.rewards.resize(n);
    batch.terminals.resize(n);
    for (Index b = 0; b < n; ++b) {
        const Transition& t = replay.sample(rng);
        for (Index j = 0; j < input_dim; ++j) {
            batch.states.data[b * input_dim + j] = t.state[j];
            batch.next_states.data[b * input_dim + j] = t.next_state[j];
        }
        batch.actions[b] = t.action;
        batch.rewards[b] = t.reward;
        batch.terminals[b] = t.terminal ? 1 : 0;
    }
    return batch;
}

// ---------------------------------------------------------------------------
// SfAgent

namespace {

SfModel make_sf_model(SfModelConfig cfg, std::uint64_t seed) {
    Rng rng(seed);
    return SfModel(std::move(cfg), rng);
}

DqnModel make_dqn_model(DqnConfig cfg, std::uint64_t seed) {
    Rng rng(seed);
    return DqnModel(std::move(cfg), rng);
}

} // namespace

SfAgent::SfAgent(SfModelConfig cfg, const TrainSchedule& schedule, SfTrainOptions options,
                 std::uint64_t init_seed)
    : model_(make_sf_model(std::move(cfg), init_seed)), sched_(schedule), opt_(options),
      replay_(static_cast<std::size_t>(schedule.replay_capacity)),
      init_rng_(Rng::stream(init_seed, 77)) {
    rebuild_optimizers();
}

void SfAgent::rebuild_optimizers() {
    td_opt_ = std::make_unique<nn::AdamOptimizer>(model_.td_params(opt_.multitask_td),
                                                  sched_.learning_rate);
    phi_opt_ = std::make_unique<nn::AdamOptimizer>(model_.phi_params(),
                                                   sched_.learning_rate);
}

Action SfAgent::act(const StackedState& state, const Pose&, double epsilon, Rng& rng) {
    return model_.select_action(model_.current_task(), state.flat(), epsilon, rng);
}

void SfAgent::record(Transition t) {
    replay_.push(std::move(t));
}

UpdateStats SfAgent::update(Rng& rng) {
    UpdateStats stats;
    TdOptions td;
    td.gamma = sched_.gamma;
    td.multitask = opt_.multitask_td;
    td.terminal_adds_next_phi = opt_.terminal_adds_next_phi;

    // successor-feature TD step
    const TransitionBatch td_batch = assemble_batch(replay_, sched_.batch_size, rng);
    td_opt_->zero_grad();
    stats.loss_sf = model_.sf_td_loss(td_batch, td);
    td_opt_->step();

    // feature / reward / reconstruction step on an independent sample
    const TransitionBatch phi_src = assemble_batch(replay_, sched_.batch_size, rng);
    RewardBatch rb;
    rb.states = phi_src.states;
    rb.rewards = phi_src.rewards;

    std::vector<Tensor> old_batches;
    const Index input_dim = model_.config().input_dim;
    for (int i = 0; i < model_.current_task(); ++i) {
        const Tensor& pool = retained_[i];
        const Index pool_n = pool.dim(0);
        const Index take = std::min<Index>(pool_n, static_cast<Index>(sched_.batch_size));
        Tensor sub = Tensor::zeros({take, input_dim});
        for (Index b = 0; b < take; ++b) {
            const Index row = rng.uniform_index(pool_n);
            std::copy(pool.data.begin() + row * input_dim,
                      pool.data.begin() + (row + 1) * input_dim,
                      sub.data.begin() + b * input_dim);
        }
        old_batches.push_back(std::move(sub));
    }

    phi_opt_->zero_grad();
    const PhiLossParts parts = model_.phi_loss(rb, old_batches);
    phi_opt_->step();
    stats.loss_phi = parts.total;
    return stats;
}

void SfAgent::sync_targets() {
    model_.sync_targets();
}

std::unique_ptr<Policy> SfAgent::greedy_policy() const {
    return std::make_unique<SfPolicy>(model_, model_.current_task());
}

std::unique_ptr<Policy> SfAgent::task_policy(int task) const {
    return std::make_unique<SfPolicy>(model_, task);
}

void SfAgent::begin_task(int, Rng& rng) {
    // retain a uniform sample of this task's states for the B-regression term
    const Index input_dim = model_.config().input_dim;
    const std::size_t pool = replay_.size();
    const std::size_t take =
        std::min<std::size_t>(pool, static_cast<std::size_t>(opt_.retained_per_task));
    std::vector<std::size_t> idx(pool);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t j = 0; j < take; ++j) {
        const std::size_t swap_with = j + rng.uniform_index(pool - j);
        std::swap(idx[j], idx[swap_with]);
    }
    Tensor states = Tensor::zeros({static_cast<Index>(take), input_dim});
    for (std::size_t b = 0; b < take; ++b) {
        const Transition& t = replay_.at(idx[b]);
        for (Index j = 0; j < input_dim; ++j) {
            states.data[b * input_dim + j] = t.state[j];
        }
    }
    retained_.push_back(std::move(states));

    model_.add_task(opt_.copy_init_on_transfer, rng);
    replay_.clear();
    rebuild_optimizers(); // fresh Adam moments for the new stage
}

CheckpointMeta SfAgent::meta_template() const {
    CheckpointMeta meta;
    meta.phi_dim = static_cast<std::uint32_t>(model_.config().phi_dim);
    meta.num_actions = static_cast<std::uint32_t>(model_.config().num_actions);
    meta.task_count = static_cast<std::uint32_t>(model_.num_tasks());
    meta.current_task = static_cast<std::uint32_t>(model_.current_task());
    return meta;
}

std::vector<nn::NamedParam> SfAgent::checkpoint_params() {
    return model_.named_params();
}

// ---------------------------------------------------------------------------
// DqnAgent

DqnAgent::DqnAgent(DqnConfig cfg, const TrainSchedule& schedule, DqnTransferMode mode,
                   std::uint64_t init_seed)
    : model_(make_dqn_model(std::move(cfg), init_seed)), sched_(schedule), mode_(mode),
      replay_(static_cast<std::size_t>(schedule.replay_capacity)) {
    opt_ = std::make_unique<nn::AdamOptimizer>(model_.trainable_params(),
                                               sched_.learning_rate);
}

Action DqnAgent::act(const StackedState& state, const Pose&, double epsilon, Rng& rng) {
    return model_.select_action(state.flat(), epsilon, rng);
}

void DqnAgent::record(Transition t) {
    replay_.push(std::move(t));
}

UpdateStats DqnAgent::update(Rng& rng) {
    UpdateStats stats;
    const TransitionBatch batch = assemble_batch(replay_, sched_.batch_size, rng);
    opt_->zero_grad();
    stats.loss_q = model_.td_loss(batch, sched_.gamma);
    opt_->step();
    return stats;
}

void DqnAgent::sync_targets() {
    model_.sync_targets();
}

std::unique_ptr<Policy> DqnAgent::greedy_policy() const {
    return std::make_unique<DqnPolicy>(model_);
}

std::unique_ptr<Policy> DqnAgent::task_policy(int task) const {
    if (mode_ == DqnTransferMode::FixFeature &&
        task < static_cast<int>(snapshots_.size())) {
        return std::make_unique<DqnPolicy>(snapshots_[task]);
    }
    return std::make_unique<DqnPolicy>(model_);
}

void DqnAgent::begin_task(int, Rng&) {
    snapshots_.push_back(model_);
    model_.transfer_init(mode_);
    replay_.clear();
    opt_ = std::make_unique<nn::AdamOptimizer>(model_.trainable_params(),
                                               sched_.learning_rate);
}

CheckpointMeta DqnAgent::meta_template() const {
    CheckpointMeta meta;
    meta.phi_dim = static_cast<std::uint32_t>(model_.config().phi_dim);
    meta.num_actions = static_cast<std::uint32_t>(model_.config().num_actions);
    meta.task_count = 1;
    meta.current_task = 0;
    return meta;
}

std::vector<nn::NamedParam> DqnAgent::checkpoint_params() {
    return model_.named_params();
}

// ---------------------------------------------------------------------------
// ScriptedAgent

ScriptedAgent::ScriptedAgent(AgentKind kind, const MazeMap* map)
    : kind_(kind), map_(map) {}

Action ScriptedAgent::act(const StackedState&, const Pose& pose, double, Rng& rng) {
    if (kind_ == AgentKind::AStarOracle) return optimal_action(*map_, pose);
    return static_cast<Action>(rng.uniform_int(kNumActions));
}

std::unique_ptr<Policy> ScriptedAgent::greedy_policy() const {
    if (kind_ == AgentKind::AStarOracle) return std::make_unique<AStarPolicy>(*map_);
    return std::make_unique<RandomPolicy>();
}

std::unique_ptr<Policy> ScriptedAgent::task_policy(int) const {
    return greedy_policy();
}

// ---------------------------------------------------------------------------
// training loop

RunResult run_training(LearnerAgent& agent, MazeEnv& env, const TrainSchedule& schedule,
                       std::uint64_t seed, const RunContext& ctx) {
    schedule.validate();
    RunResult result;

    Rng action_rng = Rng::stream(seed, 1);
    Rng replay_rng = Rng::stream(seed, 2);

    const auto t_start = std::chrono::steady_clock::now();

    double sum_sf = 0.0, sum_phi = 0.0, sum_q = 0.0;
    long n_sf = 0, n_phi = 0, n_q = 0;
    long updates = 0;
    int eval_count = 0;
    int streak = 0;
    long streak_first_step = 0;

    env.reset();
    for (long t = 1; t <= schedule.total_steps; ++t) {
        const double eps = epsilon_at(schedule, t);
        const Action a = agent.act(env.state(), env.pose(), eps, action_rng);

        Transition tr;
        const std::vector<double>& before = env.state().flat();
        tr.state.assign(before.begin(), before.end());
        const StepResult res = env.step(a);
        const std::vector<double>& after = res.state.flat();
        tr.next_state.assign(after.begin(), after.end());
        tr.action = static_cast<int>(a);
        tr.reward = static_cast<float>(res.reward);
        tr.terminal = res.terminal;
        agent.record(std::move(tr));

        if (env.episode_over()) env.reset();

        if (agent.learns() && t > schedule.warmup_steps &&
            (t - schedule.warmup_steps) % schedule.update_every == 0) {
            const UpdateStats stats = agent.update(replay_rng);
            ++updates;
            if (stats.loss_sf) { sum_sf += *stats.loss_sf; ++n_sf; }
            if (stats.loss_phi) { sum_phi += *stats.loss_phi; ++n_phi; }
            if (stats.loss_q) { sum_q += *stats.loss_q; ++n_q; }
            if (updates % schedule.target_sync_every == 0) agent.sync_targets();
        }

        if (t % schedule.eval_every == 0) {
            const std::uint64_t eval_seed =
                Rng::stream(seed, 5000 + static_cast<std::uint64_t>(eval_count)).next_u64();
            ++eval_count;
            std::unique_ptr<Policy> policy = agent.greedy_policy();
            const EvalStats st = evaluate(*policy, env.map(), env.params(),
                                          schedule.eval_episodes, eval_seed);

            MetricsRow row;
            row.step = ctx.step_offset + t;
            row.task_id = ctx.task_id;
            row.mean_reward = st.mean_reward;
            row.std_reward = st.std_reward;
            row.success_ratio = st.success_ratio();
            row.mean_steps = st.mean_steps;
            if (n_sf > 0) row.loss_sf = sum_sf / n_sf;
            if (n_phi > 0) row.loss_phi = sum_phi / n_phi;
            if (n_q > 0) row.loss_q = sum_q / n_q;
            row.epsilon = epsilon_at(schedule, t);
            if (ctx.emit_wall_clock) {
                row.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t_start)
                                  .count();
            }
            result.metrics.push_back(row);
            sum_sf = sum_phi = sum_q = 0.0;
            n_sf = n_phi = n_q = 0;

            if (st.success_ratio() >= schedule.converge_threshold) {
                if (streak == 0) streak_first_step = t;
                ++streak;
                if (streak >= schedule.converge_consecutive && !result.converged_at) {
                    result.converged_at = streak_first_step;
                }
            } else {
                streak = 0;
            }

            if (ctx.on_eval) ctx.on_eval();

            if (schedule.early_stop && result.converged_at) {
                result.env_steps = t;
                result.updates = updates;
                return result;
            }
        }
    }
    result.env_steps = schedule.total_steps;
    result.updates = updates;
    return result;
}

// ---------------------------------------------------------------------------
// transfer sequencing

std::unique_ptr<LearnerAgent> make_agent(AgentKind kind, const SfModelConfig& model_cfg,
                                         const TrainSchedule& schedule,
                                         const SfTrainOptions& sf_options,
                                         const MazeMap* first_map, std::uint64_t seed) {
    switch (kind) {
    case AgentKind::Sf:
        return std::make_unique<SfAgent>(model_cfg, schedule, sf_options, seed);
    case AgentKind::Dqn:
    case AgentKind::DqnFinetune:
    case AgentKind::DqnFixFeature: {
        DqnConfig cfg;
        cfg.input_dim = model_cfg.input_dim;
        cfg.phi_dim = model_cfg.phi_dim;
        cfg.num_actions = model_cfg.num_actions;
        cfg.encoder_hidden = model_cfg.encoder_hidden;
        cfg.head_hidden = model_cfg.psi_hidden;
        const DqnTransferMode mode = kind == AgentKind::DqnFixFeature
                                         ? DqnTransferMode::FixFeature
                                         : DqnTransferMode::Finetune;
        return std::make_unique<DqnAgent>(cfg, schedule, mode, seed);
    }
    case AgentKind::AStarOracle:
    case AgentKind::Random:
        return std::make_unique<ScriptedAgent>(kind, first_map);
    case AgentKind::Imitation:
        throw ConfigError("imitation training uses run_imitation, not the RL loop");
    }
    throw ConfigError("unsupported agent kind");
}

namespace {

MatrixRow matrix_row(int pretrain, int eval_task, const EvalStats& st) {
    MatrixRow row;
    row.pretrain_task = pretrain;
    row.eval_task = eval_task;
    row.success_num = st.successes;
    row.success_den = st.episodes;
    row.mean_reward = st.mean_reward;
    row.std_reward = st.std_reward;
    row.mean_steps = st.mean_steps;
    row.std_steps = st.std_steps;
    return row;
}

} // namespace

TransferResult run_transfer_sequence(std::vector<TransferStage> stages, AgentKind kind,
                                     const SfModelConfig& model_cfg,
                                     const SfTrainOptions& sf_options,
                                     std::uint64_t seed, bool emit_wall_clock,
                                     const std::function<void()>& on_eval) {
    if (stages.empty()) throw ConfigError("run_transfer_sequence: no stages");

    SfModelConfig cfg = model_cfg;
    cfg.input_dim = static_cast<Index>(stages[0].env.input_dim());

    TransferResult result;
    std::unique_ptr<LearnerAgent> agent =
        make_agent(kind, cfg, stages[0].schedule, sf_options, &stages[0].map,
                   Rng::stream(seed, 11).next_u64());

    Rng task_rng = Rng::stream(seed, 13);
    long offset = 0;
    const int stage_count = static_cast<int>(stages.size());
    for (int k = 0; k < stage_count; ++k) {
        if (static_cast<Index>(stages[k].env.input_dim()) != cfg.input_dim) {
            throw ConfigError("all stages must share the observation dimension");
        }
        if (k > 0) {
            agent->begin_task(k, task_rng);
            if (auto* scripted = dynamic_cast<ScriptedAgent*>(agent.get())) {
                scripted->set_map(&stages[k].map);
            }
        }
        MazeEnv env(stages[k].map, stages[k].env, Rng::stream(seed, 100 + k).next_u64());
        RunContext ctx;
        ctx.task_id = k;
        ctx.step_offset = offset;
        ctx.emit_wall_clock = emit_wall_clock;
        ctx.on_eval = on_eval;
        RunResult rr = run_training(*agent, env, stages[k].schedule,
                                    Rng::stream(seed, 200 + k).next_u64(), ctx);
        offset += rr.env_steps;
        result.converged_at.push_back(rr.converged_at);
        result.metrics.insert(result.metrics.end(), rr.metrics.begin(), rr.metrics.end());

        std::unique_ptr<Policy> pol = agent->task_policy(k);
        const EvalStats st = evaluate(*pol, stages[k].map, stages[k].env,
                                      stages[k].schedule.eval_episodes,
                                      Rng::stream(seed, 300 + k).next_u64());
        result.matrix.push_back(matrix_row(k, k, st));
    }

    for (int i = 0; i + 1 < stage_count; ++i) {
        std::unique_ptr<Policy> pol = agent->task_policy(i);
        const EvalStats st = evaluate(*pol, stages[i].map, stages[i].env,
                                      stages.back().schedule.eval_episodes,
                                      Rng::stream(seed, 400 + i).next_u64());
        result.matrix.push_back(matrix_row(stage_count - 1, i, st));
    }

    result.agent = std::move(agent);
    return result;
}

} // namespace sfnav
