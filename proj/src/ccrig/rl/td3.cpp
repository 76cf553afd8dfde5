#include "ccrig/rl/td3.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "ccrig/core/errors.hpp"
#include "ccrig/kernels/kernels.hpp"

namespace ccrig {

TD3Params make_td3(int obs_dim, int goal_dim, int act_dim, const TD3Config& cfg, Rng& rng) {
    TD3Params p;
    p.obs_dim = obs_dim;
    p.goal_dim = goal_dim;
    p.act_dim = act_dim;
    Rng ra = rng.split("actor"), rc1 = rng.split("critic1"), rc2 = rng.split("critic2");
    p.actor = make_mlp(obs_dim + goal_dim, cfg.hidden, act_dim, Act::Relu, Act::Tanh, ra);
    p.critic1 = make_mlp(obs_dim + act_dim + goal_dim, cfg.hidden, 1, Act::Relu, Act::Identity, rc1);
    p.critic2 = make_mlp(obs_dim + act_dim + goal_dim, cfg.hidden, 1, Act::Relu, Act::Identity, rc2);
    p.actor_target = p.actor;
    p.critic1_target = p.critic1;
    p.critic2_target = p.critic2;
    return p;
}

std::vector<float> select_action(const MLPParams& actor, std::span<const float> z,
                                 std::span<const float> goal, float sigma, Rng& rng) {
    Mat in(1, static_cast<int>(z.size() + goal.size()));
    std::memcpy(in.row(0), z.data(), sizeof(float) * z.size());
    std::memcpy(in.row(0) + z.size(), goal.data(), sizeof(float) * goal.size());
    Mat out = mlp_forward(actor, in);
    std::vector<float> a(out.cols());
    for (int i = 0; i < out.cols(); ++i)
        a[i] = std::clamp(out(0, i) + sigma * rng.normal(), -1.0f, 1.0f);
    return a;
}

std::vector<std::pair<std::string, Mat*>> named_params(TD3Params& p) {
    std::vector<std::pair<std::string, Mat*>> out;
    collect_named_params(p.actor, "actor", out);
    collect_named_params(p.critic1, "critic1", out);
    collect_named_params(p.critic2, "critic2", out);
    collect_named_params(p.actor_target, "actor_t", out);
    collect_named_params(p.critic1_target, "critic1_t", out);
    collect_named_params(p.critic2_target, "critic2_t", out);
    return out;
}

namespace {

void polyak(MLPParams& target, const MLPParams& online, float tau) {
    for (size_t l = 0; l < target.layers.size(); ++l) {
        auto blend = [tau](Mat& t, const Mat& o) {
            for (size_t i = 0; i < t.size(); ++i) t[i] += tau * (o[i] - t[i]);
        };
        blend(target.layers[l].w, online.layers[l].w);
        blend(target.layers[l].b, online.layers[l].b);
    }
}

Mat hcat3(const Mat& a, const Mat& b, const Mat& c) { return hcat(hcat(a, b), c); }

}  // namespace

TD3Trainer::TD3Trainer(TD3Params& params, const TD3Config& cfg) : p_(params), cfg_(cfg) {
    collect_params(p_.critic1, critic_params_);
    collect_params(p_.critic2, critic_params_);
    collect_params(p_.actor, actor_params_);
    critic_opt_ = AdamState(critic_params_, {.lr = cfg.lr});
    actor_opt_ = AdamState(actor_params_, {.lr = cfg.lr});
}

std::optional<TD3UpdateStats> TD3Trainer::update(const ReplayBuffer& buffer,
                                                 const RelabelStrategy& strategy,
                                                 const GoalSampler& sampler, Rng& rng) {
    if (buffer.size() < static_cast<size_t>(cfg_.batch)) return std::nullopt;
    TD3UpdateStats stats;
    const int B = cfg_.batch;

    auto refs = buffer.sample(B, rng);
    RelabeledBatch batch = relabel_batch(buffer, refs, strategy, sampler, rng);

    // target action with clipped smoothing noise
    Mat next_in = hcat(batch.z_next, batch.goal);
    Mat a_next = mlp_forward(p_.actor_target, next_in);
    for (size_t i = 0; i < a_next.size(); ++i) {
        float noise = std::clamp(cfg_.policy_noise * rng.normal(), -cfg_.noise_clip, cfg_.noise_clip);
        a_next[i] = std::clamp(a_next[i] + noise, -1.0f, 1.0f);
    }
    Mat target_in = hcat3(batch.z_next, a_next, batch.goal);
    Mat q1t = mlp_forward(p_.critic1_target, target_in);
    Mat q2t = mlp_forward(p_.critic2_target, target_in);

    // y = r + γ·min(Q'₁, Q'₂); episodes end by time limit, so always bootstrap
    Mat y(B, 1);
    const float r_max = std::max(buffer.max_goal_distance(), 1e-6f);
    const float lower = -2.0f * r_max / (1.0f - cfg_.gamma);
    for (int i = 0; i < B; ++i) {
        y(i, 0) = batch.r[i] + cfg_.gamma * std::min(q1t(i, 0), q2t(i, 0));
        if (y(i, 0) < lower || y(i, 0) > 1.0f) stats.tripwire_hits++;
    }
    tripwire_total_ += stats.tripwire_hits;

    // critic regression
    tape_.reset();
    Mat critic_in = hcat3(batch.z, batch.a, batch.goal);
    Var in_c = tape_.constant(critic_in);
    Var y_c = tape_.constant(y);
    auto q1 = mlp_forward(tape_, p_.critic1, in_c);
    auto q2 = mlp_forward(tape_, p_.critic2, in_c);
    Var d1 = tape_.sub(q1.out, y_c);
    Var d2 = tape_.sub(q2.out, y_c);
    Var closs = tape_.scale(tape_.add(tape_.sum(tape_.mul(d1, d1)), tape_.sum(tape_.mul(d2, d2))),
                            1.0f / static_cast<float>(B));
    tape_.backward(closs);
    stats.critic_loss = static_cast<float>(tape_.scalar_value(closs));
    {
        std::vector<const Mat*> grads;
        grads.reserve(critic_params_.size());
        for (const TapedMLP* fwd : {&q1, &q2})
            for (size_t l = 0; l < fwd->weights.size(); ++l) {
                grads.push_back(&tape_.grad(fwd->weights[l]));
                grads.push_back(&tape_.grad(fwd->biases[l]));
            }
        critic_opt_.step(critic_params_, grads);
    }

    updates_++;
    if (updates_ % cfg_.policy_delay == 0) {
        stats.actor_updated = true;
        tape_.reset();
        Var zin = tape_.constant(batch.z);
        Var gin = tape_.constant(batch.goal);
        auto pi = mlp_forward(tape_, p_.actor, tape_.concat_cols(zin, gin));
        Var qin = tape_.concat_cols(tape_.concat_cols(zin, pi.out), gin);
        auto q = mlp_forward(tape_, p_.critic1, qin, /*trainable=*/false);
        Var aloss = tape_.scale(tape_.sum(q.out), -1.0f / static_cast<float>(B));
        tape_.backward(aloss);
        stats.actor_loss = static_cast<float>(tape_.scalar_value(aloss));
        std::vector<const Mat*> grads;
        grads.reserve(actor_params_.size());
        for (size_t l = 0; l < pi.weights.size(); ++l) {
            grads.push_back(&tape_.grad(pi.weights[l]));
            grads.push_back(&tape_.grad(pi.biases[l]));
        }
        actor_opt_.step(actor_params_, grads);

        polyak(p_.actor_target, p_.actor, cfg_.tau);
        polyak(p_.critic1_target, p_.critic1, cfg_.tau);
        polyak(p_.critic2_target, p_.critic2, cfg_.tau);
    }
    return stats;
}

}  // namespace ccrig
