#include "ccrig/pipeline/repr.hpp"

#include <cstring>

#include "ccrig/core/errors.hpp"

namespace ccrig {

Method method_from_name(const std::string& s) {
    if (s == "ccrig") return Method::CCRig;
    if (s == "rig") return Method::Rig;
    if (s == "oracle") return Method::Oracle;
    throw ConfigError("unknown method: " + s + " (expected ccrig|rig|oracle)");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::CCRig: return "ccrig";
        case Method::Rig: return "rig";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

namespace {

std::vector<float> row_to_vec(const Mat& m) {
    return std::vector<float>(m.row(0), m.row(0) + m.cols());
}

class CCRigRepr final : public Representation {
public:
    explicit CCRigRepr(const CCVAEParams& model) : model_(model) {}

    int state_dim() const override { return model_.cfg.zbar(); }

    void begin_episode(const Image& s0, const EnvState*) override {
        z_c_ = encode_context(model_, image_to_row(s0));
    }

    std::vector<float> encode_obs(const Image& s, const EnvState*) override {
        GaussianParams g = encode_with_context(model_, image_to_row(s), z_c_);
        return row_to_vec(hcat(g.mu, z_c_));
    }

    std::vector<float> sample_rollout_goal(Rng& rng) override {
        Mat z_g(1, model_.cfg.z_t);
        for (size_t i = 0; i < z_g.size(); ++i) z_g[i] = rng.normal();
        return row_to_vec(hcat(z_g, z_c_));
    }

    std::vector<float> encode_goal_image(const Image& s_g, const EnvState*) override {
        GaussianParams g = encode_with_context(model_, image_to_row(s_g), z_c_);
        return row_to_vec(hcat(g.mu, z_c_));
    }

    GoalSampler relabel_goal_sampler() const override {
        const int zt = model_.cfg.z_t;
        return {[zt](const EpisodeRecord& ep, Rng& rng) {
            // fresh prior draw, context block taken from the episode itself
            std::vector<float> g(ep.latents.cols());
            for (int i = 0; i < zt; ++i) g[i] = rng.normal();
            const float* ctx = ep.latents.row(0) + zt;
            std::memcpy(g.data() + zt, ctx, sizeof(float) * (ep.latents.cols() - zt));
            return g;
        }};
    }

private:
    const CCVAEParams& model_;
    Mat z_c_;
};

class RigRepr final : public Representation {
public:
    explicit RigRepr(const VAEParams& model) : model_(model) {}

    int state_dim() const override { return model_.z_dim; }

    void begin_episode(const Image&, const EnvState*) override {}

    std::vector<float> encode_obs(const Image& s, const EnvState*) override {
        return row_to_vec(vae_encode(model_, image_to_row(s)).mu);
    }

    std::vector<float> sample_rollout_goal(Rng& rng) override {
        std::vector<float> g(model_.z_dim);
        for (float& v : g) v = rng.normal();
        return g;
    }

    std::vector<float> encode_goal_image(const Image& s_g, const EnvState*) override {
        return row_to_vec(vae_encode(model_, image_to_row(s_g)).mu);
    }

    GoalSampler relabel_goal_sampler() const override {
        const int z = model_.z_dim;
        return {[z](const EpisodeRecord&, Rng& rng) {
            std::vector<float> g(z);
            for (float& v : g) v = rng.normal();
            return g;
        }};
    }

private:
    const VAEParams& model_;
};

class OracleRepr final : public Representation {
public:
    explicit OracleRepr(const Env& env) : env_(env) {}

    int state_dim() const override { return env_.state_dim(); }

    void begin_episode(const Image&, const EnvState* st0) override {
        if (st0 == nullptr) throw ContractError("oracle representation needs simulator states");
        s0_ = *st0;
    }

    std::vector<float> encode_obs(const Image&, const EnvState* st) override {
        if (st == nullptr) throw ContractError("oracle representation needs simulator states");
        return env_.true_state(*st);
    }

    std::vector<float> sample_rollout_goal(Rng& rng) override {
        auto [goal_state, img] = env_.sample_eval_goal(s0_, rng);
        return env_.true_state(goal_state);
    }

    std::vector<float> encode_goal_image(const Image&, const EnvState* goal_state) override {
        if (goal_state == nullptr) throw ContractError("oracle representation needs simulator states");
        return env_.true_state(*goal_state);
    }

    GoalSampler relabel_goal_sampler() const override {
        const Env* env = &env_;
        return {[env](const EpisodeRecord& ep, Rng& rng) {
            // rebuild a state carrying the episode's scene, then sample a
            // feasible goal in it
            EnvState s;
            s.kind = env->kind();
            if (env->kind() == EnvKind::Nav) {
                s.nav.layout_id = ep.layout_id;
                s.nav.color = ep.color;
            } else {
                s.pusher.puck_color = ep.color;
            }
            auto [goal_state, img] = env->sample_eval_goal(s, rng);
            return env->true_state(goal_state);
        }};
    }

private:
    const Env& env_;
    EnvState s0_;
};

}  // namespace

std::unique_ptr<Representation> make_representation(Method m, const Env& env,
                                                    const CCVAEParams* ccvae, const VAEParams* vae) {
    switch (m) {
        case Method::CCRig:
            if (ccvae == nullptr) throw ConfigError("ccrig needs a trained context-conditioned model");
            return std::make_unique<CCRigRepr>(*ccvae);
        case Method::Rig:
            if (vae == nullptr) throw ConfigError("rig needs a trained vae");
            return std::make_unique<RigRepr>(*vae);
        case Method::Oracle: return std::make_unique<OracleRepr>(env);
    }
    throw ConfigError("bad method");
}

}  // namespace ccrig
