#include "sfnav/nn/tensor.hpp"

#include <cmath>

namespace sfnav::nn {

Index numel(const std::vector<Index>& shape) {
    Index n = 1;
    for (Index d : shape) n *= d;
    return n;
}

Tensor Tensor::zeros(std::vector<Index> shape) {
    Tensor t;
    t.data.assign(numel(shape), 0.0);
    t.shape = std::move(shape);
    return t;
}

Tensor Tensor::from(std::vector<Index> shape, std::vector<double> values) {
    if (numel(shape) != values.size()) {
        throw DimensionError("Tensor::from: shape does not match value count");
    }
    Tensor t;
    t.shape = std::move(shape);
    t.data = std::move(values);
    return t;
}

void Tensor::ensure_grad() {
    if (grad.size() != data.size()) grad.assign(data.size(), 0.0);
}

void Tensor::zero_grad() {
    grad.assign(data.size(), 0.0);
}

void Tensor::check_finite(const std::string& who) const {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw NumericsError("non-finite value in " + who);
        }
    }
    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw NumericsError("non-finite gradient in " + who);
        }
    }
}

bool same_shape(const Tensor& a, const Tensor& b) {
    return a.shape == b.shape;
}

void require_same_shape(const Tensor& a, const Tensor& b, const std::string& where) {
    if (!same_shape(a, b)) {
        throw DimensionError(where + ": shape mismatch");
    }
}

std::pair<double, Tensor> mse_and_grad(const Tensor& pred, const Tensor& target) {
    require_same_shape(pred, target, "mse_and_grad");
    const Index n = pred.size();
    Tensor grad = Tensor::zeros(pred.shape);
    double loss = 0.0;
    const double inv_n = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
    for (Index i = 0; i < n; ++i) {
        const double d = pred.data[i] - target.data[i];
        loss += d * d;
        grad.data[i] = 2.0 * d * inv_n;
    }
    return {loss * inv_n, std::move(grad)};
}

} // namespace sfnav::nn
