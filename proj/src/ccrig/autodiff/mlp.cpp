#include "ccrig/autodiff/mlp.hpp"

#include <cmath>

#include "ccrig/core/errors.hpp"
#include "ccrig/kernels/kernels.hpp"

namespace ccrig {

MLPParams make_mlp(int in, const std::vector<int>& hidden, int out, Act hidden_act, Act final_act,
                   Rng& rng) {
    if (in <= 0 || out <= 0) throw DimensionError("make_mlp: non-positive layer size");
    MLPParams p;
    std::vector<int> dims;
    dims.push_back(in);
    for (int h : hidden) dims.push_back(h);
    dims.push_back(out);
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
        Layer layer;
        int fan_in = dims[i], fan_out = dims[i + 1];
        layer.w = Mat(fan_out, fan_in);
        layer.b = Mat(1, fan_out);
        layer.act = (i + 2 == dims.size()) ? final_act : hidden_act;
        if (layer.act == Act::Relu) {
            float stddev = std::sqrt(2.0f / static_cast<float>(fan_in));
            for (size_t j = 0; j < layer.w.size(); ++j) layer.w[j] = stddev * rng.normal();
        } else {
            float lim = std::sqrt(6.0f / static_cast<float>(fan_in + fan_out));
            for (size_t j = 0; j < layer.w.size(); ++j) layer.w[j] = rng.uniform(-lim, lim);
        }
        p.layers.push_back(std::move(layer));
    }
    return p;
}

Mat mlp_forward(const MLPParams& p, const Mat& x) {
    if (p.layers.empty()) throw ContractError("mlp_forward: empty network");
    if (x.cols() != p.in_dim())
        throw DimensionError("mlp_forward: input has " + std::to_string(x.cols()) +
                             " features, net expects " + std::to_string(p.in_dim()));
    const auto& K = kern::ops();
    Mat cur = x;
    for (const Layer& l : p.layers) {
        Mat next(cur.rows(), l.w.rows());
        K.gemm_nt(cur.data(), l.w.data(), next.data(), cur.rows(), cur.cols(), l.w.rows(), false);
        for (int r = 0; r < next.rows(); ++r) K.add(next.row(r), l.b.data(), next.row(r), l.b.cols());
        switch (l.act) {
            case Act::Relu: K.relu(next.data(), next.data(), next.size()); break;
            case Act::Tanh: K.tanh_fwd(next.data(), next.data(), next.size()); break;
            case Act::Sigmoid: K.sigmoid_fwd(next.data(), next.data(), next.size()); break;
            case Act::Identity: break;
        }
        cur = std::move(next);
    }
    return cur;
}

TapedMLP mlp_forward(Tape& tape, const MLPParams& p, Var x, bool trainable) {
    if (p.layers.empty()) throw ContractError("mlp_forward: empty network");
    TapedMLP result;
    Var cur = x;
    for (const Layer& l : p.layers) {
        Var w = trainable ? tape.leaf(l.w) : tape.constant(l.w);
        Var b = trainable ? tape.leaf(l.b) : tape.constant(l.b);
        if (trainable) {
            result.weights.push_back(w);
            result.biases.push_back(b);
        }
        cur = tape.affine(cur, w, b);
        if (l.act != Act::Identity) cur = tape.activation(cur, l.act);
    }
    result.out = cur;
    return result;
}

void collect_params(MLPParams& p, std::vector<Mat*>& out) {
    for (Layer& l : p.layers) {
        out.push_back(&l.w);
        out.push_back(&l.b);
    }
}

void collect_named_params(MLPParams& p, const std::string& prefix,
                          std::vector<std::pair<std::string, Mat*>>& out) {
    for (size_t i = 0; i < p.layers.size(); ++i) {
        out.emplace_back(prefix + ".l" + std::to_string(i) + ".w", &p.layers[i].w);
        out.emplace_back(prefix + ".l" + std::to_string(i) + ".b", &p.layers[i].b);
    }
}

size_t param_count(const MLPParams& p) {
    size_t n = 0;
    for (const Layer& l : p.layers) n += l.w.size() + l.b.size();
    return n;
}

const char* act_name(Act a) {
    switch (a) {
        case Act::Relu: return "relu";
        case Act::Tanh: return "tanh";
        case Act::Sigmoid: return "sigmoid";
        case Act::Identity: return "identity";
    }
    return "?";
}

Act act_from_name(const std::string& s) {
    if (s == "relu") return Act::Relu;
    if (s == "tanh") return Act::Tanh;
    if (s == "sigmoid") return Act::Sigmoid;
    if (s == "identity") return Act::Identity;
    throw ConfigError("unknown activation kind: " + s);
}

}  // namespace ccrig
