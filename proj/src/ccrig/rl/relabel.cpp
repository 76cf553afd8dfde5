#include "ccrig/rl/relabel.hpp"

#include <cmath>
#include <cstring>

#include "ccrig/core/errors.hpp"

namespace ccrig {

RelabeledBatch relabel_batch(const ReplayBuffer& buffer, const std::vector<ReplayBuffer::Ref>& refs,
                             const RelabelStrategy& strategy, const GoalSampler& sampler, Rng& rng) {
    if (refs.empty()) throw ContractError("relabel_batch: empty batch");
    if (std::fabs(strategy.future + strategy.prior + strategy.original - 1.0f) > 1e-5f)
        throw ConfigError("relabel weights must sum to 1");

    const EpisodeRecord& first = buffer.episode(refs[0].episode);
    const int dim = first.latents.cols();
    const int act_dim = first.actions.cols();
    const int B = static_cast<int>(refs.size());

    RelabeledBatch out{Mat(B, dim), Mat(B, act_dim), Mat(B, dim), Mat(B, dim), {}};
    out.r.resize(B);

    for (int i = 0; i < B; ++i) {
        const EpisodeRecord& ep = buffer.episode(refs[i].episode);
        const int t = refs[i].t;
        std::memcpy(out.z.row(i), ep.latents.row(t), sizeof(float) * dim);
        std::memcpy(out.z_next.row(i), ep.latents.row(t + 1), sizeof(float) * dim);
        std::memcpy(out.a.row(i), ep.actions.row(t), sizeof(float) * act_dim);

        float u = rng.uniform_f32();
        bool relabeled = false;
        if (u < strategy.future) {
            // states that begin strictly later transitions: t+1 .. H−1
            int lo = t + 1, hi = ep.steps() - 1;
            if (lo <= hi) {
                int pick = lo + rng.uniform_int(hi - lo + 1);
                std::memcpy(out.goal.row(i), ep.latents.row(pick), sizeof(float) * dim);
                relabeled = true;
            }
        } else if (u < strategy.future + strategy.prior) {
            std::vector<float> g = sampler.sample_prior(ep, rng);
            if (static_cast<int>(g.size()) != dim)
                throw DimensionError("relabel: prior goal dim " + std::to_string(g.size()));
            std::memcpy(out.goal.row(i), g.data(), sizeof(float) * dim);
            relabeled = true;
        }
        if (!relabeled) std::memcpy(out.goal.row(i), ep.goal.data(), sizeof(float) * dim);

        out.r[i] = latent_reward({out.z_next.row(i), static_cast<size_t>(dim)},
                                 {out.goal.row(i), static_cast<size_t>(dim)});
    }
    return out;
}

}  // namespace ccrig
