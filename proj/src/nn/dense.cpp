#include "sfnav/nn/dense.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace sfnav::nn {

namespace {

using MatRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<MatRM>;
using MapConstMat = Eigen::Map<const MatRM>;

void require_rank2_cols(const Tensor& t, Index cols, const std::string& where) {
    if (t.rank() != 2 || t.dim(1) != cols) {
        throw DimensionError(where + ": expected a [batch, " + std::to_string(cols) +
                             "] tensor");
    }
}

} // namespace

DenseLayer make_dense(Index in, Index out, Activation act, Rng& rng) {
    DenseLayer layer;
    layer.weight = Tensor::zeros({out, in});
    layer.bias = Tensor::zeros({out});
    layer.act = act;
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (double& w : layer.weight.data) w = rng.uniform(-bound, bound);
    return layer;
}

Tensor dense_preactivation(const DenseLayer& layer, const Tensor& input) {
    require_rank2_cols(input, layer.in_dim(), "dense_forward");
    const Index batch = input.dim(0);
    const Index out = layer.out_dim();
    Tensor pre = Tensor::zeros({batch, out});

    MapConstMat x(input.data.data(), static_cast<Eigen::Index>(batch),
                  static_cast<Eigen::Index>(layer.in_dim()));
    MapConstMat w(layer.weight.data.data(), static_cast<Eigen::Index>(out),
                  static_cast<Eigen::Index>(layer.in_dim()));
    MapMat y(pre.data.data(), static_cast<Eigen::Index>(batch),
             static_cast<Eigen::Index>(out));
    y.noalias() = x * w.transpose();
    for (Index b = 0; b < batch; ++b) {
        for (Index o = 0; o < out; ++o) pre.data[b * out + o] += layer.bias.data[o];
    }
    return pre;
}

Tensor dense_forward(const DenseLayer& layer, const Tensor& input) {
    Tensor out = dense_preactivation(layer, input);
    if (layer.act == Activation::ReLU) {
        for (double& v : out.data) v = v > 0.0 ? v : 0.0;
    }
    return out;
}

DenseGrads dense_backward_from_preact(const DenseLayer& layer, const Tensor& input,
                                      const Tensor& preact, const Tensor& upstream) {
    const Index batch = input.dim(0);
    const Index in = layer.in_dim();
    const Index out = layer.out_dim();
    if (upstream.rank() != 2 || upstream.dim(0) != batch || upstream.dim(1) != out) {
        throw DimensionError("dense_backward: upstream grad shape mismatch");
    }

    // dPre = upstream * act'(pre); ReLU subgradient is 0 at pre == 0.
    Tensor dpre = upstream;
    if (layer.act == Activation::ReLU) {
        for (Index i = 0; i < dpre.size(); ++i) {
            if (preact.data[i] <= 0.0) dpre.data[i] = 0.0;
        }
    }

    DenseGrads g;
    g.input_grad = Tensor::zeros({batch, in});
    g.weight_grad = Tensor::zeros({out, in});
    g.bias_grad = Tensor::zeros({out});

    MapConstMat x(input.data.data(), static_cast<Eigen::Index>(batch),
                  static_cast<Eigen::Index>(in));
    MapConstMat w(layer.weight.data.data(), static_cast<Eigen::Index>(out),
                  static_cast<Eigen::Index>(in));
    MapConstMat dp(dpre.data.data(), static_cast<Eigen::Index>(batch),
                   static_cast<Eigen::Index>(out));

    MapMat dx(g.input_grad.data.data(), static_cast<Eigen::Index>(batch),
              static_cast<Eigen::Index>(in));
    MapMat dw(g.weight_grad.data.data(), static_cast<Eigen::Index>(out),
              static_cast<Eigen::Index>(in));

    dx.noalias() = dp * w;
    dw.noalias() = dp.transpose() * x;
    for (Index b = 0; b < batch; ++b) {
        for (Index o = 0; o < out; ++o) g.bias_grad.data[o] += dpre.data[b * out + o];
    }
    return g;
}

DenseGrads dense_backward(const DenseLayer& layer, const Tensor& input,
                          const Tensor& upstream_grad) {
    require_rank2_cols(input, layer.in_dim(), "dense_backward");
    Tensor pre = dense_preactivation(layer, input);
    return dense_backward_from_preact(layer, input, pre, upstream_grad);
}

Mlp::Mlp(const std::vector<Index>& dims, Activation hidden_act, Activation out_act,
         Rng& rng) {
    if (dims.size() < 2) throw DimensionError("Mlp: need at least input and output dims");
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        const bool last = (i + 2 == dims.size());
        layers.push_back(make_dense(dims[i], dims[i + 1], last ? out_act : hidden_act, rng));
    }
}

Tensor Mlp::forward(const Tensor& input) const {
    Tensor x = input;
    for (const DenseLayer& layer : layers) x = dense_forward(layer, x);
    return x;
}

Tensor Mlp::forward(const Tensor& input, MlpCache& cache) const {
    cache.inputs.clear();
    cache.preacts.clear();
    Tensor x = input;
    for (const DenseLayer& layer : layers) {
        cache.inputs.push_back(x);
        Tensor pre = dense_preactivation(layer, x);
        cache.preacts.push_back(pre);
        if (layer.act == Activation::ReLU) {
            for (double& v : pre.data) v = v > 0.0 ? v : 0.0;
        }
        x = std::move(pre);
    }
    return x;
}

Tensor Mlp::backward(const MlpCache& cache, const Tensor& upstream) {
    ensure_grad();
    Tensor up = upstream;
    for (std::size_t li = layers.size(); li-- > 0;) {
        DenseGrads g = dense_backward_from_preact(layers[li], cache.inputs[li],
                                                  cache.preacts[li], up);
        for (Index i = 0; i < g.weight_grad.size(); ++i) {
            layers[li].weight.grad[i] += g.weight_grad.data[i];
        }
        for (Index i = 0; i < g.bias_grad.size(); ++i) {
            layers[li].bias.grad[i] += g.bias_grad.data[i];
        }
        up = std::move(g.input_grad);
    }
    return up;
}

void Mlp::ensure_grad() {
    for (DenseLayer& layer : layers) {
        layer.weight.ensure_grad();
        layer.bias.ensure_grad();
    }
}

void Mlp::zero_grad() {
    for (DenseLayer& layer : layers) {
        layer.weight.zero_grad();
        layer.bias.zero_grad();
    }
}

void Mlp::collect_params(const std::string& prefix, std::vector<NamedParam>& out) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
        out.push_back({prefix + ".L" + std::to_string(i) + ".W", &layers[i].weight});
        out.push_back({prefix + ".L" + std::to_string(i) + ".b", &layers[i].bias});
    }
}

namespace {

Tensor matmul_impl(const Tensor& a, const Tensor& b, bool ta, bool tb) {
    const Index am = ta ? a.dim(1) : a.dim(0);
    const Index ak = ta ? a.dim(0) : a.dim(1);
    const Index bk = tb ? b.dim(1) : b.dim(0);
    const Index bn = tb ? b.dim(0) : b.dim(1);
    if (a.rank() != 2 || b.rank() != 2 || ak != bk) {
        throw DimensionError("matmul: incompatible shapes");
    }
    Tensor out = Tensor::zeros({am, bn});
    MapConstMat ma(a.data.data(), static_cast<Eigen::Index>(a.dim(0)),
                   static_cast<Eigen::Index>(a.dim(1)));
    MapConstMat mb(b.data.data(), static_cast<Eigen::Index>(b.dim(0)),
                   static_cast<Eigen::Index>(b.dim(1)));
    MapMat mo(out.data.data(), static_cast<Eigen::Index>(am),
              static_cast<Eigen::Index>(bn));
    if (!ta && !tb) mo.noalias() = ma * mb;
    else if (!ta && tb) mo.noalias() = ma * mb.transpose();
    else mo.noalias() = ma.transpose() * mb;
    return out;
}

} // namespace

Tensor matmul_nn(const Tensor& a, const Tensor& b) { return matmul_impl(a, b, false, false); }
Tensor matmul_nt(const Tensor& a, const Tensor& b) { return matmul_impl(a, b, false, true); }
Tensor matmul_tn(const Tensor& a, const Tensor& b) { return matmul_impl(a, b, true, false); }

} // namespace sfnav::nn
