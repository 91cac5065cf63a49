#pragma once

#include <functional>
#include <span>

#include "sfnav/nn/tensor.hpp"

namespace sfnav::nn {

struct GradCheckReport {
    double max_rel_err = 0.0;
    Index worst_index = 0;
    bool pass = false;
};

// Central finite differences against an analytic gradient, one coordinate at a
// time. loss_fn must be deterministic in the parameters. Relative error uses
// max(|analytic|, |numeric|, 1e-8) as denominator. Parameters are restored.
GradCheckReport grad_check(const std::function<double(std::span<const double>)>& loss_fn,
                           std::span<double> params,
                           std::span<const double> analytic_grad,
                           double h, double tol);

} // namespace sfnav::nn
