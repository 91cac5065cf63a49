#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfnav/nn/dense.hpp"

namespace sfnav::nn {

struct AdamState {
    std::uint64_t step_count = 0;
    std::vector<double> m; // first moment
    std::vector<double> v; // second moment
    double learning_rate = 2.5e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState init(std::size_t n, double learning_rate);
};

// One bias-corrected Adam update, in place. Throws NumericsError on non-finite
// gradients or if the update produces non-finite parameters; the message names
// the step count, callers add the parameter name.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

// Owns one AdamState per named parameter tensor and steps them together.
class AdamOptimizer {
public:
    AdamOptimizer(std::vector<NamedParam> params, double learning_rate);

    void step();
    void zero_grad();
    void set_learning_rate(double lr);
    double learning_rate() const { return lr_; }
    std::uint64_t step_count() const;

private:
    std::vector<NamedParam> params_;
    std::vector<AdamState> states_;
    double lr_;
};

} // namespace sfnav::nn
