#pragma once

#include <string>
#include <vector>

#include "sfnav/nn/tensor.hpp"

namespace sfnav::nn {

enum class Activation { Linear, ReLU };

struct DenseLayer {
    Tensor weight; // [out, in]
    Tensor bias;   // [out]
    Activation act = Activation::Linear;

    Index in_dim() const { return weight.dim(1); }
    Index out_dim() const { return weight.dim(0); }
};

// Weights uniform in [-1/sqrt(in), +1/sqrt(in)], biases zero.
DenseLayer make_dense(Index in, Index out, Activation act, Rng& rng);

// output = act(input * W^T + b), input [batch, in] -> [batch, out]
Tensor dense_forward(const DenseLayer& layer, const Tensor& input);

struct DenseGrads {
    Tensor input_grad;
    Tensor weight_grad;
    Tensor bias_grad;
};

// Reverse-mode gradients for one layer. ReLU uses subgradient 0 at exactly 0.
DenseGrads dense_backward(const DenseLayer& layer, const Tensor& input,
                          const Tensor& upstream_grad);

struct NamedParam {
    std::string name;
    Tensor* tensor;
};

struct MlpCache {
    std::vector<Tensor> inputs;  // input to each layer
    std::vector<Tensor> preacts; // pre-activation of each layer
};

// Fixed feed-forward stack of dense layers. Gradients accumulate into each
// layer's Tensor::grad; callers zero them between optimizer steps.
class Mlp {
public:
    Mlp() = default;
    // dims = {in, h1, ..., out}; hidden layers use hidden_act, last layer out_act.
    Mlp(const std::vector<Index>& dims, Activation hidden_act, Activation out_act,
        Rng& rng);

    Tensor forward(const Tensor& input) const;
    Tensor forward(const Tensor& input, MlpCache& cache) const;

    // Accumulates parameter grads, returns gradient w.r.t. the input.
    Tensor backward(const MlpCache& cache, const Tensor& upstream);

    void ensure_grad();
    void zero_grad();

    Index in_dim() const { return layers.front().in_dim(); }
    Index out_dim() const { return layers.back().out_dim(); }
    bool empty() const { return layers.empty(); }

    // Appends "L<i>.W" / "L<i>.b" entries under the given prefix.
    void collect_params(const std::string& prefix, std::vector<NamedParam>& out);

    std::vector<DenseLayer> layers;
};

// Internal kernels shared by dense_backward and Mlp::backward.
Tensor dense_preactivation(const DenseLayer& layer, const Tensor& input);
DenseGrads dense_backward_from_preact(const DenseLayer& layer, const Tensor& input,
                                      const Tensor& preact, const Tensor& upstream);

// Rank-2 products: a[m,k] * b[k,n], a[m,k] * b[n,k]^T, a[k,m]^T * b[k,n].
Tensor matmul_nn(const Tensor& a, const Tensor& b);
Tensor matmul_nt(const Tensor& a, const Tensor& b);
Tensor matmul_tn(const Tensor& a, const Tensor& b);

} // namespace sfnav::nn
