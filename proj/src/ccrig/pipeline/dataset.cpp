#include "ccrig/pipeline/dataset.hpp"

#include "ccrig/core/errors.hpp"

namespace ccrig {

void Dataset::fill_image_row(int ep, int t, float* row) const {
    const EpisodeData& e = episodes[ep];
    const std::vector<uint8_t>& bytes = t == 0 ? e.s0 : e.step_images[t - 1];
    for (size_t i = 0; i < bytes.size(); ++i) row[i] = static_cast<float>(bytes[i]) / 255.0f;
}

Dataset collect_random_dataset(const Env& env, int episodes, Rng& rng) {
    if (episodes < 1) throw ContractError("collect_random_dataset: need at least one episode");
    Dataset ds;
    ds.env_kind = env.kind();
    ds.width = env.config().image_size;
    ds.height = env.config().image_size;
    for (int n = 0; n < episodes; ++n) {
        auto [state, obs] = env.reset(rng);
        EpisodeData ep;
        ep.layout_id = env.kind() == EnvKind::Nav ? state.nav.layout_id : 0;
        ep.color = env.kind() == EnvKind::Nav ? state.nav.color : state.pusher.puck_color;
        ep.s0 = quantize(obs);
        ep.states.push_back(env.true_state(state));
        bool done = false;
        while (!done) {
            float ax = rng.uniform(-1.0f, 1.0f);
            float ay = rng.uniform(-1.0f, 1.0f);
            auto [next, img, d] = env.step(state, ax, ay);
            ep.actions.push_back({ax, ay});
            ep.step_images.push_back(quantize(img));
            ep.states.push_back(env.true_state(next));
            state = next;
            done = d;
        }
        ds.episodes.push_back(std::move(ep));
    }
    return ds;
}

}  // namespace ccrig
