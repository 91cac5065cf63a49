#pragma once

#include <span>

#include "sfnav/sf_model.hpp"

namespace sfnav {

enum class DqnTransferMode { Finetune, FixFeature };

struct DqnConfig {
    Index input_dim = 128;
    Index phi_dim = 64;
    Index num_actions = 4;
    std::vector<Index> encoder_hidden{256, 128}; // mirrors the SF encoder
    Index head_hidden = 256;                     // mirrors the psi head sizing
};

// Standard deep Q-network: shared-shape encoder plus a Q head, with target
// copies of both for bootstrap targets.
class DqnModel {
public:
    DqnModel(DqnConfig cfg, Rng& rng);

    std::vector<double> q_values(std::span<const double> state) const;
    Tensor q_values_batch(const Tensor& states) const;
    Tensor target_q_values_batch(const Tensor& states) const;
    Action select_action(std::span<const double> state, double epsilon, Rng& rng) const;

    // y = r + gamma * max_a' Q(s', a'; target), y = r on terminal; squared TD
    // error with gradients through encoder (unless frozen) and head.
    double td_loss(const TransitionBatch& batch, double gamma);

    void sync_targets();

    // Finetune keeps everything trainable; FixFeature freezes the encoder.
    // Weights are kept either way.
    void transfer_init(DqnTransferMode mode);
    bool encoder_frozen() const { return encoder_frozen_; }

    std::vector<NamedParam> trainable_params();
    std::vector<NamedParam> named_params(); // "dqn." prefix
    const DqnConfig& config() const { return cfg_; }

    Mlp encoder;
    Mlp head;
    Mlp target_encoder;
    Mlp target_head;

    // grad-check entry: loss with fixed targets
    double td_loss_against_targets(const TransitionBatch& batch,
                                   const std::vector<double>& targets);

private:
    DqnConfig cfg_;
    bool encoder_frozen_ = false;
};

} // namespace sfnav
