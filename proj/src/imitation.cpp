#include "sfnav/imitation.hpp"

#include <cmath>

#include "sfnav/planner.hpp"

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

ImitationModel::ImitationModel(ImitationConfig cfg, Rng& rng) : cfg_(std::move(cfg)) {
    encoder = Mlp(stack_dims(cfg_.input_dim, cfg_.encoder_hidden, cfg_.phi_dim),
                  nn::Activation::ReLU, nn::Activation::Linear, rng);
    head = Mlp({cfg_.phi_dim, cfg_.num_actions}, nn::Activation::Linear,
               nn::Activation::Linear, rng);
}

Tensor ImitationModel::logits_batch(const Tensor& states) const {
    return head.forward(encoder.forward(states));
}

std::vector<double> ImitationModel::logits(std::span<const double> state) const {
    if (state.size() != cfg_.input_dim) {
        throw DimensionError("imitation logits: state dimension mismatch");
    }
    Tensor s = Tensor::zeros({1, cfg_.input_dim});
    std::copy(state.begin(), state.end(), s.data.begin());
    return logits_batch(s).data;
}

Action ImitationModel::select_action(std::span<const double> state) const {
    const std::vector<double> z = logits(state);
    return static_cast<Action>(argmax_lowest(z));
}

double ImitationModel::ce_loss(const Tensor& states, std::span<const int> labels) {
    const Index n = states.dim(0);
    if (n == 0) throw DimensionError("ce_loss: empty batch");
    const Index a_count = cfg_.num_actions;

    MlpCache enc_cache, head_cache;
    const Tensor phi = encoder.forward(states, enc_cache);
    const Tensor z = head.forward(phi, head_cache); // [B, A]

    double loss = 0.0;
    Tensor dz = Tensor::zeros({n, a_count});
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Index b = 0; b < n; ++b) {
        const double* row = z.data.data() + b * a_count;
        double m = row[0];
        for (Index a = 1; a < a_count; ++a) m = std::max(m, row[a]);
        double denom = 0.0;
        for (Index a = 0; a < a_count; ++a) denom += std::exp(row[a] - m);
        const Index label = static_cast<Index>(labels[b]);
        loss += -(row[label] - m - std::log(denom));
        for (Index a = 0; a < a_count; ++a) {
            const double p = std::exp(row[a] - m) / denom;
            dz.data[b * a_count + a] = (p - (a == label ? 1.0 : 0.0)) * inv_n;
        }
    }
    const Tensor dphi = head.backward(head_cache, dz);
    encoder.backward(enc_cache, dphi);
    return loss * inv_n;
}

std::vector<NamedParam> ImitationModel::trainable_params() {
    std::vector<NamedParam> out;
    encoder.collect_params("imit.encoder", out);
    head.collect_params("imit.head", out);
    return out;
}

std::vector<NamedParam> ImitationModel::named_params() {
    return trainable_params();
}

LabeledDataset build_imitation_dataset(const MazeMap& map, const EnvParams& params,
                                       int n_samples, Rng& rng) {
    LabeledDataset ds;
    const Index input_dim = params.input_dim();
    ds.states = Tensor::zeros({static_cast<Index>(n_samples), input_dim});
    ds.labels.reserve(n_samples);
    ds.poses.reserve(n_samples);

    MazeEnv env(map, params, rng.next_u64());
    env.reset();
    for (int i = 0; i < n_samples; ++i) {
        if (env.episode_over()) env.reset();
        const Action label = optimal_action(map, env.pose());
        const std::vector<double>& flat = env.state().flat();
        std::copy(flat.begin(), flat.end(),
                  ds.states.data.begin() + static_cast<Index>(i) * input_dim);
        ds.labels.push_back(static_cast<int>(label));
        ds.poses.push_back(env.pose());
        env.step(label);
    }
    return ds;
}

} // namespace sfnav
