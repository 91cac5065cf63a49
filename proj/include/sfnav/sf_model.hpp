#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sfnav/maze.hpp"
#include "sfnav/nn/dense.hpp"

namespace sfnav {

using nn::Index;
using nn::Mlp;
using nn::NamedParam;
using nn::Tensor;

// Greedy argmax with ties resolved to the lowest index.
int argmax_lowest(std::span<const double> values);

struct SfModelConfig {
    Index input_dim = 128; // H * 2R
    Index phi_dim = 64;
    Index num_actions = 4;
    std::vector<Index> encoder_hidden{256, 128};
    std::vector<Index> decoder_hidden{128, 256};
    Index psi_hidden = 256;
};

struct TdOptions {
    double gamma = 0.99;
    // Train every head on the current batch (full multi-task TD objective)
    // instead of only the current task's head with old heads stored frozen.
    bool multitask = false;
    // Desk-scale reward semantics switch: count the arrival state's features
    // once in terminal targets (y = phi_s + gamma * phi_s') instead of
    // cutting at y = phi_s. See trainer notes.
    bool terminal_adds_next_phi = false;
};

// One task: reward weights, successor head, feature map back to this task's
// feature space, and (once the task is no longer current) its encoder snapshot.
struct TaskHead {
    Tensor omega;                      // [phi]
    Mlp psi;                           // phi -> hidden -> A*phi
    Tensor B;                          // [phi, phi]; identity while current
    std::optional<Mlp> frozen_encoder; // present iff task is not current
};

struct TransitionBatch {
    Tensor states;      // [B, input]
    Tensor next_states; // [B, input]
    std::vector<int> actions;
    std::vector<double> rewards;
    std::vector<std::uint8_t> terminals;

    Index size() const { return actions.size(); }
};

struct RewardBatch {
    Tensor states; // [B, input]
    std::vector<double> rewards;
};

struct PhiLossParts {
    double total = 0.0;
    double reward = 0.0;
    double reconstruction = 0.0;
    double feature_regression = 0.0;
};

class SfModel {
public:
    SfModel(SfModelConfig cfg, Rng& rng);

    // deterministic feature map phi(s)
    Tensor encode(const Tensor& states) const;
    // reconstruction of the flattened state, used only inside phi_loss
    Tensor decode(const Tensor& phi) const;
    // psi^i(phi, a) for all actions in one pass: [B, A*phi]
    Tensor successor_forward(int task, const Tensor& phi) const;
    Tensor target_successor_forward(int task, const Tensor& phi) const;

    // Q^i(s, a) = (B^i psi^i(phi^k_s, a)) . omega^i; B is the identity for the
    // current task.
    std::vector<double> q_values(int task, std::span<const double> state) const;
    Tensor q_values_batch(int task, const Tensor& phi) const; // [B, A]

    Action select_action(int task, std::span<const double> state, double epsilon,
                         Rng& rng) const;

    // TD objective on successor features; accumulates gradients into the
    // trained psi head(s) only. Targets use the live net for the argmax and
    // the target net for the bootstrap value, and are treated as constants.
    double sf_td_loss(const TransitionBatch& batch, const TdOptions& opt);

    // Reward regression + state reconstruction + old-task feature regression.
    // retained_old_states[i] holds task-i states (i < current task).
    // Accumulates gradients into encoder, decoder, current omega and old B's.
    PhiLossParts phi_loss(const RewardBatch& batch,
                          const std::vector<Tensor>& retained_old_states);

    void sync_targets();

    // Freezes the current encoder into the outgoing task, appends a new head
    // (psi copied from the previous head when copy_init) and makes it current.
    int add_task(bool copy_init, Rng& rng);

    int num_tasks() const { return static_cast<int>(tasks.size()); }
    int current_task() const { return current_; }
    const SfModelConfig& config() const { return cfg_; }

    // parameter groups for the two alternating optimizers
    std::vector<NamedParam> td_params(bool multitask);
    std::vector<NamedParam> phi_params();
    // every parameter, checkpoint naming scheme
    std::vector<NamedParam> named_params();

    // grad-check entry points: the composed losses with frozen targets
    double td_loss_against_targets(int task, const Tensor& phi_states,
                                   const std::vector<int>& actions,
                                   const Tensor& targets);
    Tensor td_targets(int task, const Tensor& phi_states, const Tensor& phi_next,
                      const std::vector<std::uint8_t>& terminals,
                      const TdOptions& opt) const;

    Mlp encoder;
    Mlp decoder;
    std::vector<TaskHead> tasks;
    std::vector<Mlp> target_psi; // aligned with tasks

private:
    void check_task(int task) const;

    SfModelConfig cfg_;
    int current_ = 0;
};

Tensor identity_matrix(Index n);

} // namespace sfnav
