#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ccrig/env/env.hpp"
#include "ccrig/gen/models.hpp"
#include "ccrig/rl/relabel.hpp"

namespace ccrig {

enum class Method : uint8_t { CCRig = 0, Rig = 1, Oracle = 2 };

Method method_from_name(const std::string& s);
const char* method_name(Method m);

// What the policy sees. Each method maps observations and goals into its own
// vector space; begin_episode pins the episode context. The underlying
// generative model stays frozen while a policy trains against it.
class Representation {
public:
    virtual ~Representation() = default;

    virtual int state_dim() const = 0;
    // st0 may be null when replaying logged data; only the oracle needs it.
    virtual void begin_episode(const Image& s0, const EnvState* st0) = 0;
    virtual std::vector<float> encode_obs(const Image& s, const EnvState* st) = 0;
    // Training-time goal for the current episode (prior sample / feasible state).
    virtual std::vector<float> sample_rollout_goal(Rng& rng) = 0;
    // Test-time goal from a goal image (the oracle reads the state instead).
    virtual std::vector<float> encode_goal_image(const Image& s_g, const EnvState* goal_state) = 0;
    // Fresh scene-consistent goals for relabeling stored transitions.
    virtual GoalSampler relabel_goal_sampler() const = 0;
};

std::unique_ptr<Representation> make_representation(Method m, const Env& env,
                                                    const CCVAEParams* ccvae, const VAEParams* vae);

}  // namespace ccrig
