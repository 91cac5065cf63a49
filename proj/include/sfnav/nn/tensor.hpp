#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sfnav/common.hpp"

namespace sfnav::nn {

using Index = std::size_t;

Index numel(const std::vector<Index>& shape);

// Dense row-major array with an optional gradient slot of the same length.
// Carrier for every learned parameter and activation in the project.
struct Tensor {
    std::vector<Index> shape;
    std::vector<double> data;
    std::vector<double> grad; // empty when absent

    Tensor() = default;

    static Tensor zeros(std::vector<Index> shape);
    static Tensor from(std::vector<Index> shape, std::vector<double> values);

    Index size() const { return data.size(); }
    Index rank() const { return shape.size(); }
    Index dim(Index i) const { return shape[i]; }

    // rank-2 accessors
    double& at(Index r, Index c) { return data[r * shape[1] + c]; }
    double at(Index r, Index c) const { return data[r * shape[1] + c]; }

    bool has_grad() const { return !grad.empty(); }
    void ensure_grad();
    void zero_grad();

    // Throws NumericsError naming `who` if any value (or gradient) is not finite.
    void check_finite(const std::string& who) const;
};

bool same_shape(const Tensor& a, const Tensor& b);
void require_same_shape(const Tensor& a, const Tensor& b, const std::string& where);

// loss = mean over all elements of (pred - target)^2; grad is w.r.t. pred.
std::pair<double, Tensor> mse_and_grad(const Tensor& pred, const Tensor& target);

} // namespace sfnav::nn
