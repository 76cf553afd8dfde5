#pragma once

#include <string>
#include <vector>

#include "ccrig/autodiff/tape.hpp"
#include "ccrig/core/mat.hpp"
#include "ccrig/core/rng.hpp"

namespace ccrig {

struct Layer {
    Mat w;  // out×in
    Mat b;  // 1×out
    Act act = Act::Identity;
};

struct MLPParams {
    std::vector<Layer> layers;

    int in_dim() const { return layers.empty() ? 0 : layers.front().w.cols(); }
    int out_dim() const { return layers.empty() ? 0 : layers.back().w.rows(); }
};

// He-normal init for relu layers, Xavier-uniform otherwise; zero biases.
MLPParams make_mlp(int in, const std::vector<int>& hidden, int out, Act hidden_act, Act final_act,
                   Rng& rng);

// Plain forward, no gradient bookkeeping.
Mat mlp_forward(const MLPParams& p, const Mat& x);

struct TapedMLP {
    Var out;
    std::vector<Var> weights;  // empty when the pass is frozen
    std::vector<Var> biases;
};

// Forward on a tape. trainable=false records params as constants so the
// graph can flow gradients *through* the net without training it.
TapedMLP mlp_forward(Tape& tape, const MLPParams& p, Var x, bool trainable = true);

void collect_params(MLPParams& p, std::vector<Mat*>& out);
void collect_named_params(MLPParams& p, const std::string& prefix,
                          std::vector<std::pair<std::string, Mat*>>& out);
size_t param_count(const MLPParams& p);

const char* act_name(Act a);
Act act_from_name(const std::string& s);

}  // namespace ccrig
