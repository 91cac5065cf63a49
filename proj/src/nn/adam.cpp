#include "sfnav/nn/adam.hpp"

#include <cmath>
#include <string>

namespace sfnav::nn {

AdamState AdamState::init(std::size_t n, double learning_rate) {
    AdamState s;
    s.m.assign(n, 0.0);
    s.v.assign(n, 0.0);
    s.learning_rate = learning_rate;
    return s;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size()) {
        throw DimensionError("adam_step: parameter/gradient/state length mismatch");
    }
    state.step_count += 1;
    const double t = static_cast<double>(state.step_count);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        if (!std::isfinite(g)) {
            throw NumericsError("non-finite gradient at adam step " +
                                std::to_string(state.step_count));
        }
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double mhat = state.m[i] / bc1;
        const double vhat = state.v[i] / bc2;
        params[i] -= state.learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
        if (!std::isfinite(params[i])) {
            throw NumericsError("non-finite parameter after adam step " +
                                std::to_string(state.step_count));
        }
    }
}

AdamOptimizer::AdamOptimizer(std::vector<NamedParam> params, double learning_rate)
    : params_(std::move(params)), lr_(learning_rate) {
    states_.reserve(params_.size());
    for (const NamedParam& p : params_) {
        p.tensor->ensure_grad();
        states_.push_back(AdamState::init(p.tensor->size(), lr_));
    }
}

void AdamOptimizer::step() {
    for (std::size_t i = 0; i < params_.size(); ++i) {
        Tensor& t = *params_[i].tensor;
        try {
            adam_step(std::span<double>(t.data),
                      std::span<const double>(t.grad), states_[i]);
        } catch (const NumericsError& e) {
            throw NumericsError(std::string(e.what()) + " (parameter " +
                                params_[i].name + ")");
        }
    }
}

void AdamOptimizer::zero_grad() {
    for (const NamedParam& p : params_) p.tensor->zero_grad();
}

void AdamOptimizer::set_learning_rate(double lr) {
    lr_ = lr;
    for (AdamState& s : states_) s.learning_rate = lr;
}

std::uint64_t AdamOptimizer::step_count() const {
    return states_.empty() ? 0 : states_.front().step_count;
}

} // namespace sfnav::nn
