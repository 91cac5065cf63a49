#include "sfnav/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace sfnav::nn {

GradCheckReport grad_check(const std::function<double(std::span<const double>)>& loss_fn,
                           std::span<double> params,
                           std::span<const double> analytic_grad,
                           double h, double tol) {
    GradCheckReport report;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + h;
        const double up = loss_fn(params);
        params[i] = saved - h;
        const double down = loss_fn(params);
        params[i] = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double analytic = analytic_grad[i];
        const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
        const double rel = std::abs(analytic - numeric) / denom;
        if (rel > report.max_rel_err) {
            report.max_rel_err = rel;
            report.worst_index = i;
        }
    }
    report.pass = report.max_rel_err <= tol;
    return report;
}

} // namespace sfnav::nn
