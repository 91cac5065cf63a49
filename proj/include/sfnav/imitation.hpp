#pragma once

#include <span>

#include "sfnav/env.hpp"
#include "sfnav/sf_model.hpp"

namespace sfnav {

struct ImitationConfig {
    Index input_dim = 128;
    Index phi_dim = 64;
    Index num_actions = 4;
    std::vector<Index> encoder_hidden{256, 128}; // same shape as the SF encoder
};

// Supervised policy: the SF-shaped encoder feeding one softmax layer.
class ImitationModel {
public:
    ImitationModel(ImitationConfig cfg, Rng& rng);

    Tensor logits_batch(const Tensor& states) const;
    std::vector<double> logits(std::span<const double> state) const;
    Action select_action(std::span<const double> state) const; // greedy

    // softmax cross-entropy vs labels; gradients through encoder and head
    double ce_loss(const Tensor& states, std::span<const int> labels);

    std::vector<NamedParam> trainable_params();
    std::vector<NamedParam> named_params(); // "imit." prefix
    const ImitationConfig& config() const { return cfg_; }

    Mlp encoder;
    Mlp head; // single linear layer phi -> |A|

private:
    ImitationConfig cfg_;
};

// A*-rollout dataset: frame stacks recorded along planner trajectories from
// random starts, labelled with the planner's action for the ground-truth pose.
struct LabeledDataset {
    Tensor states; // [N, input]
    std::vector<int> labels;
    std::vector<Pose> poses; // ground truth, for verification only

    std::size_t size() const { return labels.size(); }
};

LabeledDataset build_imitation_dataset(const MazeMap& map, const EnvParams& params,
                                       int n_samples, Rng& rng);

} // namespace sfnav
