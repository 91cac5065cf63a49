#include "sfnav/dqn.hpp"

namespace sfnav {

using nn::MlpCache;

namespace {

std::vector<Index> stack_dims(Index in, const std::vector<Index>& hidden, Index out) {
    std::vector<Index> dims;
    dims.push_back(in);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(out);
    return dims;
}

} // namespace

DqnModel::DqnModel(DqnConfig cfg, Rng& rng) : cfg_(std::move(cfg)) {
    encoder = Mlp(stack_dims(cfg_.input_dim, cfg_.encoder_hidden, cfg_.phi_dim),
                  nn::Activation::ReLU, nn::Activation::Linear, rng);
    head = Mlp({cfg_.phi_dim, cfg_.head_hidden, cfg_.num_actions},
               nn::Activation::ReLU, nn::Activation::Linear, rng);
    target_encoder = encoder;
    target_head = head;
}

Tensor DqnModel::q_values_batch(const Tensor& states) const {
    return head.forward(encoder.forward(states));
}

Tensor DqnModel::target_q_values_batch(const Tensor& states) const {
    return target_head.forward(target_encoder.forward(states));
}

std::vector<double> DqnModel::q_values(std::span<const double> state) const {
    if (state.size() != cfg_.input_dim) {
        throw DimensionError("dqn q_values: state dimension mismatch");
    }
    Tensor s = Tensor::zeros({1, cfg_.input_dim});
    std::copy(state.begin(), state.end(), s.data.begin());
    return q_values_batch(s).data;
}

Action DqnModel::select_action(std::span<const double> state, double epsilon,
                               Rng& rng) const {
    if (epsilon > 0.0 && rng.uniform() < epsilon) {
        return static_cast<Action>(rng.uniform_int(static_cast<int>(cfg_.num_actions)));
    }
    const std::vector<double> q = q_values(state);
    return static_cast<Action>(argmax_lowest(q));
}

double DqnModel::td_loss_against_targets(const TransitionBatch& batch,
                                         const std::vector<double>& targets) {
    const Index n = batch.size();
    const Index a_count = cfg_.num_actions;

    MlpCache enc_cache, head_cache;
    const Tensor phi = encoder.forward(batch.states, enc_cache);
    const Tensor q = head.forward(phi, head_cache); // [B, A]

    Tensor pred = Tensor::zeros({n});
    for (Index b = 0; b < n; ++b) {
        pred.data[b] = q.data[b * a_count + static_cast<Index>(batch.actions[b])];
    }
    auto [loss, grad] = mse_and_grad(pred, Tensor::from({n}, targets));

    Tensor upstream = Tensor::zeros({n, a_count});
    for (Index b = 0; b < n; ++b) {
        upstream.data[b * a_count + static_cast<Index>(batch.actions[b])] = grad.data[b];
    }
    const Tensor dphi = head.backward(head_cache, upstream);
    if (!encoder_frozen_) encoder.backward(enc_cache, dphi);
    return loss;
}

double DqnModel::td_loss(const TransitionBatch& batch, double gamma) {
    if (batch.size() == 0) throw DimensionError("dqn td_loss: empty batch");
    const Index n = batch.size();
    const Index a_count = cfg_.num_actions;

    const Tensor q_next = target_q_values_batch(batch.next_states);
    std::vector<double> targets(n);
    for (Index b = 0; b < n; ++b) {
        double y = batch.rewards[b];
        if (!batch.terminals[b]) {
            double best = q_next.data[b * a_count];
            for (Index a = 1; a < a_count; ++a) {
                best = std::max(best, q_next.data[b * a_count + a]);
            }
            y += gamma * best;
        }
        targets[b] = y;
    }
    return td_loss_against_targets(batch, targets);
}

void DqnModel::sync_targets() {
    target_encoder = encoder;
    target_head = head;
    target_encoder.zero_grad();
    target_head.zero_grad();
}

void DqnModel::transfer_init(DqnTransferMode mode) {
    encoder_frozen_ = (mode == DqnTransferMode::FixFeature);
}

std::vector<NamedParam> DqnModel::trainable_params() {
    std::vector<NamedParam> out;
    if (!encoder_frozen_) encoder.collect_params("dqn.encoder", out);
    head.collect_params("dqn.head", out);
    return out;
}

std::vector<NamedParam> DqnModel::named_params() {
    std::vector<NamedParam> out;
    encoder.collect_params("dqn.encoder", out);
    head.collect_params("dqn.head", out);
    target_encoder.collect_params("dqn.target.encoder", out);
    target_head.collect_params("dqn.target.head", out);
    return out;
}

} // namespace sfnav
