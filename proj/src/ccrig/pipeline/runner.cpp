#include "ccrig/pipeline/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "ccrig/core/errors.hpp"

namespace ccrig {

namespace {

float median_of(std::vector<float> v) {
    if (v.empty()) return 0.0f;
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5f * (v[n / 2 - 1] + v[n / 2]);
}

float true_distance(const Env& env, const EnvState& a, const EnvState& b) {
    std::vector<float> sa = env.true_state(a);
    std::vector<float> sb = env.true_state(b);
    double acc = 0.0;
    for (size_t i = 0; i < sa.size(); ++i) {
        double d = static_cast<double>(sa[i]) - sb[i];
        acc += d * d;
    }
    return static_cast<float>(std::sqrt(acc));
}

EvalMetrics summarize(std::vector<float> dists, std::vector<float> latents) {
    EvalMetrics m;
    m.episodes = static_cast<int>(dists.size());
    if (dists.empty()) return m;
    double sum = std::accumulate(dists.begin(), dists.end(), 0.0);
    m.mean_dist = static_cast<float>(sum / dists.size());
    double var = 0.0;
    for (float d : dists) var += (d - m.mean_dist) * (d - m.mean_dist);
    m.std_dist = static_cast<float>(std::sqrt(var / dists.size()));
    m.median_dist = median_of(dists);
    m.mean_latent_dist =
        static_cast<float>(std::accumulate(latents.begin(), latents.end(), 0.0) / latents.size());
    m.median_latent_dist = median_of(latents);
    return m;
}

}  // namespace

EvalMetrics evaluate_policy(const Env& env, Representation& repr, const MLPParams& actor,
                            int episodes, Rng eval_rng) {
    Rng noise_rng = eval_rng.split("unused-noise");
    std::vector<float> dists, latents;
    for (int e = 0; e < episodes; ++e) {
        auto [st, img] = env.reset(eval_rng);
        repr.begin_episode(img, &st);
        auto [goal_state, goal_img] = env.sample_eval_goal(st, eval_rng);
        std::vector<float> z_g = repr.encode_goal_image(goal_img, &goal_state);
        std::vector<float> z = repr.encode_obs(img, &st);
        bool done = false;
        while (!done) {
            std::vector<float> a = select_action(actor, z, z_g, 0.0f, noise_rng);
            auto [next, next_img, d] = env.step(st, a[0], a[1]);
            st = next;
            z = repr.encode_obs(next_img, &st);
            done = d;
        }
        dists.push_back(true_distance(env, st, goal_state));
        latents.push_back(-latent_reward({z.data(), z.size()}, {z_g.data(), z_g.size()}));
    }
    return summarize(std::move(dists), std::move(latents));
}

EvalMetrics evaluate_random_policy(const Env& env, int episodes, Rng eval_rng) {
    Rng action_rng = eval_rng.split("rand-actions");
    std::vector<float> dists;
    for (int e = 0; e < episodes; ++e) {
        auto [st, img] = env.reset(eval_rng);
        auto [goal_state, goal_img] = env.sample_eval_goal(st, eval_rng);
        bool done = false;
        while (!done) {
            auto [next, next_img, d] = env.step(st, action_rng.uniform(-1.0f, 1.0f),
                                                action_rng.uniform(-1.0f, 1.0f));
            st = next;
            done = d;
        }
        dists.push_back(true_distance(env, st, goal_state));
    }
    std::vector<float> latents(dists.size(), 0.0f);
    return summarize(std::move(dists), std::move(latents));
}

namespace {

struct LossAccum {
    double critic = 0.0, actor = 0.0;
    int critic_n = 0, actor_n = 0;
    void add(const TD3UpdateStats& s) {
        critic += s.critic_loss;
        critic_n++;
        if (s.actor_updated) {
            actor += s.actor_loss;
            actor_n++;
        }
    }
    float mean_critic() const { return critic_n ? static_cast<float>(critic / critic_n) : 0.0f; }
    float mean_actor() const { return actor_n ? static_cast<float>(actor / actor_n) : 0.0f; }
    void reset() { *this = {}; }
};

}  // namespace

RunResult run_online(const Env& env, Representation& repr, TD3Params& td3, const TD3Config& td3_cfg,
                     const RelabelStrategy& strategy, const RunnerConfig& cfg, uint64_t seed,
                     const RlProgressFn& progress) {
    // env streams depend on the seed only: methods stay paired
    Rng base(seed);
    Rng env_rng = base.split("env-train");
    Rng expl_rng = base.split("exploration");
    Rng update_rng = base.split("updates");
    Rng goal_rng = base.split("rollout-goals");

    ReplayBuffer buffer(cfg.buffer_capacity);
    TD3Trainer trainer(td3, td3_cfg);
    GoalSampler sampler = repr.relabel_goal_sampler();

    RunResult result;
    const int H = env.config().horizon;
    const int64_t episodes = cfg.online_steps / H;
    int eval_index = 0;
    auto run_eval = [&]() {
        EvalMetrics m = evaluate_policy(env, repr, td3.actor, cfg.eval_episodes,
                                        base.split("env-eval").split(static_cast<uint64_t>(eval_index)));
        eval_index++;
        return m;
    };

    result.initial_eval = run_eval();
    if (progress) {
        RlProgress p;
        p.step = 0;
        p.episode = 0;
        p.eval = result.initial_eval;
        progress(p);
    }

    LossAccum losses;
    int64_t steps = 0, last_eval = 0;
    EvalMetrics last = result.initial_eval;
    for (int64_t ep = 0; ep < episodes; ++ep) {
        auto [st, img] = env.reset(env_rng);
        repr.begin_episode(img, &st);
        std::vector<float> goal = repr.sample_rollout_goal(goal_rng);
        std::vector<float> z = repr.encode_obs(img, &st);
        const int dim = static_cast<int>(z.size());

        EpisodeRecord rec;
        rec.layout_id = env.kind() == EnvKind::Nav ? st.nav.layout_id : 0;
        rec.color = env.kind() == EnvKind::Nav ? st.nav.color : st.pusher.puck_color;
        rec.goal = goal;
        rec.latents = Mat(H + 1, dim);
        rec.actions = Mat(H, 2);
        rec.frames.reserve(H + 1);
        rec.frames.push_back(quantize(img));
        std::memcpy(rec.latents.row(0), z.data(), sizeof(float) * dim);

        bool done = false;
        int t = 0;
        while (!done) {
            std::vector<float> a = select_action(td3.actor, z, goal, td3_cfg.expl_sigma, expl_rng);
            auto [next, next_img, d] = env.step(st, a[0], a[1]);
            st = next;
            z = repr.encode_obs(next_img, &st);
            rec.actions(t, 0) = a[0];
            rec.actions(t, 1) = a[1];
            std::memcpy(rec.latents.row(t + 1), z.data(), sizeof(float) * dim);
            rec.frames.push_back(quantize(next_img));
            t++;
            steps++;
            done = d;
            if (steps > cfg.warmup_steps) {
                for (int u = 0; u < cfg.updates_per_step; ++u) {
                    auto stats = trainer.update(buffer, strategy, sampler, update_rng);
                    if (stats) losses.add(*stats);
                }
            }
        }
        buffer.push_episode(std::move(rec));

        if (steps - last_eval >= cfg.eval_interval || ep + 1 == episodes) {
            last_eval = steps;
            last = run_eval();
            if (progress) {
                RlProgress p;
                p.step = steps;
                p.episode = static_cast<int>(ep + 1);
                p.eval = last;
                p.critic_loss = losses.mean_critic();
                p.actor_loss = losses.mean_actor();
                progress(p);
                losses.reset();
            }
        }
    }
    result.final_eval = last;
    result.steps = steps;
    result.tripwire_hits = trainer.total_tripwire_hits();
    return result;
}

RunResult pretrain_offpolicy(const Env& env, Representation& repr, const Dataset& ds, TD3Params& td3,
                             const TD3Config& td3_cfg, const RelabelStrategy& strategy,
                             const RunnerConfig& cfg, uint64_t seed, const RlProgressFn& progress) {
    if (ds.transition_count() < static_cast<size_t>(td3_cfg.batch))
        throw ContractError("pretrain: dataset holds fewer transitions than one batch");
    Rng base(seed);
    Rng update_rng = base.split("updates");
    Rng goal_rng = base.split("rollout-goals");

    ReplayBuffer buffer(std::max(cfg.buffer_capacity, ds.transition_count()));
    GoalSampler sampler = repr.relabel_goal_sampler();

    // encode the dataset once with the frozen model
    for (size_t e = 0; e < ds.episodes.size(); ++e) {
        const EpisodeData& src = ds.episodes[e];
        const int H = static_cast<int>(src.actions.size());
        Image s0 = dequantize(src.s0, ds.width, ds.height);
        const EnvState* st0 = nullptr;
        EnvState st0_storage;
        std::vector<EnvState> state_storage;
        if (!src.states.empty()) {
            // in-memory datasets carry true states; rebuild env states for the oracle
            state_storage.resize(H + 1);
            for (int t = 0; t <= H; ++t) {
                EnvState& s = state_storage[t];
                s.kind = ds.env_kind;
                if (ds.env_kind == EnvKind::Nav) {
                    s.nav.layout_id = src.layout_id;
                    s.nav.color = src.color;
                    s.nav.pos = {src.states[t][0], src.states[t][1]};
                } else {
                    s.pusher.puck_color = src.color;
                    s.pusher.arm = {src.states[t][0], src.states[t][1]};
                    s.pusher.puck = {src.states[t][2], src.states[t][3]};
                }
            }
            st0_storage = state_storage[0];
            st0 = &st0_storage;
        }
        repr.begin_episode(s0, st0);

        EpisodeRecord rec;
        rec.layout_id = src.layout_id;
        rec.color = src.color;
        rec.goal = repr.sample_rollout_goal(goal_rng);
        std::vector<float> z0 =
            repr.encode_obs(s0, state_storage.empty() ? nullptr : &state_storage[0]);
        const int dim = static_cast<int>(z0.size());
        rec.latents = Mat(H + 1, dim);
        rec.actions = Mat(H, 2);
        std::memcpy(rec.latents.row(0), z0.data(), sizeof(float) * dim);
        rec.frames.push_back(src.s0);
        for (int t = 0; t < H; ++t) {
            Image img = dequantize(src.step_images[t], ds.width, ds.height);
            std::vector<float> z =
                repr.encode_obs(img, state_storage.empty() ? nullptr : &state_storage[t + 1]);
            std::memcpy(rec.latents.row(t + 1), z.data(), sizeof(float) * dim);
            rec.actions(t, 0) = src.actions[t][0];
            rec.actions(t, 1) = src.actions[t][1];
            rec.frames.push_back(src.step_images[t]);
        }
        buffer.push_episode(std::move(rec));
    }

    TD3Trainer trainer(td3, td3_cfg);
    RunResult result;
    int eval_index = 0;
    auto run_eval = [&]() {
        EvalMetrics m = evaluate_policy(env, repr, td3.actor, cfg.eval_episodes,
                                        base.split("env-eval").split(static_cast<uint64_t>(eval_index)));
        eval_index++;
        return m;
    };
    result.initial_eval = run_eval();
    if (progress) {
        RlProgress p;
        p.step = 0;
        p.phase = "pretrain";
        p.eval = result.initial_eval;
        progress(p);
    }

    LossAccum losses;
    EvalMetrics last = result.initial_eval;
    for (int64_t step = 1; step <= cfg.pretrain_steps; ++step) {
        auto stats = trainer.update(buffer, strategy, sampler, update_rng);
        if (stats) losses.add(*stats);
        if (step % cfg.eval_interval == 0 || step == cfg.pretrain_steps) {
            last = run_eval();
            if (progress) {
                RlProgress p;
                p.step = step;
                p.phase = "pretrain";
                p.eval = last;
                p.critic_loss = losses.mean_critic();
                p.actor_loss = losses.mean_actor();
                progress(p);
                losses.reset();
            }
        }
    }
    result.final_eval = last;
    result.steps = cfg.pretrain_steps;
    result.tripwire_hits = trainer.total_tripwire_hits();
    return result;
}

}  // namespace ccrig
