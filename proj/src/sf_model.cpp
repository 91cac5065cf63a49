#include "sfnav/sf_model.hpp"

#include <cmath>

namespace sfnav {

using nn::MlpCache;
using nn::mse_and_grad;

int argmax_lowest(std::span<const double> values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

Tensor identity_matrix(Index n) {
    Tensor t = Tensor::zeros({n, n});
    for (Index i = 0; i < n; ++i) t.data[i * n + i] = 1.0;
    return t;
}

namespace {

std::vector<Index> stack_dims(Index in, const std::vector<Index>& hidden, Index out) {
    std::vector<Index> dims;
    dims.push_back(in);
    dims.insert(dims.end(), hidden.begin(), hidden.end());
    dims.push_back(out);
    return dims;
}

} // namespace

SfModel::SfModel(SfModelConfig cfg, Rng& rng) : cfg_(std::move(cfg)) {
    encoder = Mlp(stack_dims(cfg_.input_dim, cfg_.encoder_hidden, cfg_.phi_dim),
                  nn::Activation::ReLU, nn::Activation::Linear, rng);
    decoder = Mlp(stack_dims(cfg_.phi_dim, cfg_.decoder_hidden, cfg_.input_dim),
                  nn::Activation::ReLU, nn::Activation::Linear, rng);

    TaskHead head;
    head.omega = Tensor::zeros({cfg_.phi_dim});
    head.psi = Mlp({cfg_.phi_dim, cfg_.psi_hidden, cfg_.num_actions * cfg_.phi_dim},
                   nn::Activation::ReLU, nn::Activation::Linear, rng);
    head.B = identity_matrix(cfg_.phi_dim);
    tasks.push_back(std::move(head));
    target_psi.push_back(tasks[0].psi);
}

void SfModel::check_task(int task) const {
    if (task < 0 || task >= num_tasks()) {
        throw DimensionError("invalid task index " + std::to_string(task));
    }
}

Tensor SfModel::encode(const Tensor& states) const {
    return encoder.forward(states);
}

Tensor SfModel::decode(const Tensor& phi) const {
    return decoder.forward(phi);
}

Tensor SfModel::successor_forward(int task, const Tensor& phi) const {
    check_task(task);
    return tasks[task].psi.forward(phi);
}

Tensor SfModel::target_successor_forward(int task, const Tensor& phi) const {
    check_task(task);
    return target_psi[task].forward(phi);
}

Tensor SfModel::q_values_batch(int task, const Tensor& phi) const {
    check_task(task);
    const Index batch = phi.dim(0);
    const Index a_count = cfg_.num_actions;
    const Index pd = cfg_.phi_dim;
    const Tensor psi = successor_forward(task, phi); // [B, A*phi]
    // view as [B*A, phi], map through B^i, then dot with omega
    Tensor psi_rows = psi;
    psi_rows.shape = {batch * a_count, pd};
    const Tensor mapped = nn::matmul_nt(psi_rows, tasks[task].B); // [B*A, phi]
    Tensor q = Tensor::zeros({batch, a_count});
    const std::vector<double>& w = tasks[task].omega.data;
    for (Index r = 0; r < batch * a_count; ++r) {
        double acc = 0.0;
        for (Index j = 0; j < pd; ++j) acc += mapped.data[r * pd + j] * w[j];
        q.data[r] = acc;
    }
    return q;
}

std::vector<double> SfModel::q_values(int task, std::span<const double> state) const {
    check_task(task);
    if (state.size() != cfg_.input_dim) {
        throw DimensionError("q_values: state dimension mismatch");
    }
    Tensor s = Tensor::zeros({1, cfg_.input_dim});
    std::copy(state.begin(), state.end(), s.data.begin());
    const Tensor q = q_values_batch(task, encode(s));
    return q.data;
}

Action SfModel::select_action(int task, std::span<const double> state, double epsilon,
                              Rng& rng) const {
    if (epsilon > 0.0 && rng.uniform() < epsilon) {
        return static_cast<Action>(rng.uniform_int(static_cast<int>(cfg_.num_actions)));
    }
    const std::vector<double> q = q_values(task, state);
    return static_cast<Action>(argmax_lowest(q));
}

Tensor SfModel::td_targets(int task, const Tensor& phi_states, const Tensor& phi_next,
                           const std::vector<std::uint8_t>& terminals,
                           const TdOptions& opt) const {
    check_task(task);
    const Index batch = phi_states.dim(0);
    const Index pd = cfg_.phi_dim;

    const Tensor q_next = q_values_batch(task, phi_next); // live net argmax
    const Tensor psi_next_tgt = target_successor_forward(task, phi_next);

    Tensor y = phi_states;
    for (Index b = 0; b < batch; ++b) {
        if (terminals[b]) {
            if (opt.terminal_adds_next_phi) {
                for (Index j = 0; j < pd; ++j) {
                    y.data[b * pd + j] += opt.gamma * phi_next.data[b * pd + j];
                }
            }
            continue;
        }
        const int a_star = argmax_lowest(
            std::span<const double>(q_next.data.data() + b * cfg_.num_actions,
                                    cfg_.num_actions));
        const Index off = b * cfg_.num_actions * pd + static_cast<Index>(a_star) * pd;
        for (Index j = 0; j < pd; ++j) {
            y.data[b * pd + j] += opt.gamma * psi_next_tgt.data[off + j];
        }
    }
    return y;
}

double SfModel::td_loss_against_targets(int task, const Tensor& phi_states,
                                        const std::vector<int>& actions,
                                        const Tensor& targets) {
    check_task(task);
    const Index batch = phi_states.dim(0);
    const Index pd = cfg_.phi_dim;
    const Index a_count = cfg_.num_actions;

    MlpCache cache;
    const Tensor psi_all = tasks[task].psi.forward(phi_states, cache); // [B, A*phi]

    Tensor pred = Tensor::zeros({batch, pd});
    for (Index b = 0; b < batch; ++b) {
        const Index off = b * a_count * pd + static_cast<Index>(actions[b]) * pd;
        std::copy(psi_all.data.begin() + off, psi_all.data.begin() + off + pd,
                  pred.data.begin() + b * pd);
    }
    auto [loss, grad] = mse_and_grad(pred, targets);

    Tensor upstream = Tensor::zeros({batch, a_count * pd});
    for (Index b = 0; b < batch; ++b) {
        const Index off = b * a_count * pd + static_cast<Index>(actions[b]) * pd;
        std::copy(grad.data.begin() + b * pd, grad.data.begin() + (b + 1) * pd,
                  upstream.data.begin() + off);
    }
    tasks[task].psi.backward(cache, upstream);
    return loss;
}

double SfModel::sf_td_loss(const TransitionBatch& batch, const TdOptions& opt) {
    if (batch.size() == 0) throw DimensionError("sf_td_loss: empty batch");
    const Tensor phi_s = encode(batch.states);
    const Tensor phi_next = encode(batch.next_states);

    double total = 0.0;
    const int first = opt.multitask ? 0 : current_;
    for (int task = first; task <= current_; ++task) {
        const Tensor y = td_targets(task, phi_s, phi_next, batch.terminals, opt);
        total += td_loss_against_targets(task, phi_s, batch.actions, y);
    }
    return total;
}

PhiLossParts SfModel::phi_loss(const RewardBatch& batch,
                               const std::vector<Tensor>& retained_old_states) {
    if (batch.rewards.empty()) throw DimensionError("phi_loss: empty batch");
    if (static_cast<int>(retained_old_states.size()) != current_) {
        throw ConfigError("phi_loss: need one retained state batch per old task");
    }
    const Index batch_n = batch.states.dim(0);
    const Index pd = cfg_.phi_dim;
    TaskHead& cur = tasks[current_];

    encoder.ensure_grad();
    decoder.ensure_grad();
    cur.omega.ensure_grad();

    PhiLossParts parts;

    MlpCache enc_cache;
    const Tensor phi = encoder.forward(batch.states, enc_cache);

    // reward regression: mean over batch of (r - phi . omega)^2
    Tensor pred_r = Tensor::zeros({batch_n});
    for (Index b = 0; b < batch_n; ++b) {
        double acc = 0.0;
        for (Index j = 0; j < pd; ++j) acc += phi.data[b * pd + j] * cur.omega.data[j];
        pred_r.data[b] = acc;
    }
    const Tensor target_r = Tensor::from({batch_n}, batch.rewards);
    auto [loss_r, grad_r] = mse_and_grad(pred_r, target_r);
    parts.reward = loss_r;

    Tensor dphi = Tensor::zeros({batch_n, pd});
    for (Index b = 0; b < batch_n; ++b) {
        const double g = grad_r.data[b];
        for (Index j = 0; j < pd; ++j) {
            dphi.data[b * pd + j] += g * cur.omega.data[j];
            cur.omega.grad[j] += g * phi.data[b * pd + j];
        }
    }

    // state reconstruction through the decoder
    MlpCache dec_cache;
    const Tensor recon = decoder.forward(phi, dec_cache);
    auto [loss_d, grad_d] = mse_and_grad(recon, batch.states);
    parts.reconstruction = loss_d;
    const Tensor dphi_recon = decoder.backward(dec_cache, grad_d);
    for (Index i = 0; i < dphi.size(); ++i) dphi.data[i] += dphi_recon.data[i];

    encoder.backward(enc_cache, dphi);

    // old-task feature regression: (phi^i_s - B^i phi^k_s)^2 on retained states
    for (int i = 0; i < current_; ++i) {
        TaskHead& old = tasks[i];
        if (!old.frozen_encoder.has_value()) {
            throw ConfigError("phi_loss: task " + std::to_string(i) +
                              " is missing its frozen encoder snapshot");
        }
        const Tensor& states_i = retained_old_states[i];
        if (states_i.size() == 0) continue;
        old.B.ensure_grad();

        MlpCache ci;
        const Tensor phi_k = encoder.forward(states_i, ci);
        const Tensor phi_i = old.frozen_encoder->forward(states_i);
        const Tensor proj = nn::matmul_nt(phi_k, old.B);
        auto [loss_b, grad_b] = mse_and_grad(proj, phi_i);
        parts.feature_regression += loss_b;

        const Tensor db = nn::matmul_tn(grad_b, phi_k); // [phi, phi]
        for (Index n = 0; n < db.size(); ++n) old.B.grad[n] += db.data[n];
        const Tensor dphi_k = nn::matmul_nn(grad_b, old.B);
        encoder.backward(ci, dphi_k);
    }

    parts.total = parts.reward + parts.reconstruction + parts.feature_regression;
    return parts;
}

void SfModel::sync_targets() {
    for (int i = 0; i < num_tasks(); ++i) {
        target_psi[i] = tasks[i].psi;
        target_psi[i].zero_grad();
    }
}

int SfModel::add_task(bool copy_init, Rng& rng) {
    tasks[current_].frozen_encoder = encoder; // snapshot of theta_phi

    TaskHead head;
    head.omega = Tensor::zeros({cfg_.phi_dim});
    if (copy_init) {
        head.psi = tasks[current_].psi;
        head.psi.zero_grad();
    } else {
        head.psi = Mlp({cfg_.phi_dim, cfg_.psi_hidden, cfg_.num_actions * cfg_.phi_dim},
                       nn::Activation::ReLU, nn::Activation::Linear, rng);
    }
    head.B = identity_matrix(cfg_.phi_dim);
    tasks.push_back(std::move(head));
    target_psi.push_back(tasks.back().psi);
    target_psi.back().zero_grad();
    current_ = num_tasks() - 1;
    return current_;
}

std::vector<NamedParam> SfModel::td_params(bool multitask) {
    std::vector<NamedParam> out;
    const int first = multitask ? 0 : current_;
    for (int i = first; i <= current_; ++i) {
        tasks[i].psi.collect_params("task" + std::to_string(i) + ".psi", out);
    }
    return out;
}

std::vector<NamedParam> SfModel::phi_params() {
    std::vector<NamedParam> out;
    encoder.collect_params("encoder", out);
    decoder.collect_params("decoder", out);
    out.push_back({"task" + std::to_string(current_) + ".omega", &tasks[current_].omega});
    for (int i = 0; i < current_; ++i) {
        out.push_back({"task" + std::to_string(i) + ".B", &tasks[i].B});
    }
    return out;
}

std::vector<NamedParam> SfModel::named_params() {
    std::vector<NamedParam> out;
    encoder.collect_params("encoder", out);
    decoder.collect_params("decoder", out);
    for (int i = 0; i < num_tasks(); ++i) {
        const std::string prefix = "task" + std::to_string(i);
        TaskHead& head = tasks[i];
        out.push_back({prefix + ".omega", &head.omega});
        out.push_back({prefix + ".B", &head.B});
        head.psi.collect_params(prefix + ".psi", out);
        if (head.frozen_encoder.has_value()) {
            head.frozen_encoder->collect_params(prefix + ".frozen_encoder", out);
        }
        target_psi[i].collect_params("target." + prefix + ".psi", out);
    }
    return out;
}

} // namespace sfnav
