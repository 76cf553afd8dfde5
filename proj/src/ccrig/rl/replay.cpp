#include "ccrig/rl/replay.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ccrig/core/errors.hpp"

namespace ccrig {

float latent_reward(std::span<const float> z_next, std::span<const float> goal) {
    if (z_next.size() != goal.size())
        throw DimensionError("latent_reward: dims " + std::to_string(z_next.size()) + " vs " +
                             std::to_string(goal.size()));
    double acc = 0.0;
    for (size_t i = 0; i < z_next.size(); ++i) {
        double d = static_cast<double>(z_next[i]) - goal[i];
        acc += d * d;
    }
    return -static_cast<float>(std::sqrt(acc));
}

void ReplayBuffer::push_episode(EpisodeRecord ep) {
    if (ep.latents.rows() != ep.actions.rows() + 1)
        throw ContractError("push_episode: latents must have one more row than actions");
    ep.episode_id = next_id_++;
    for (int t = 1; t < ep.latents.rows(); ++t) {
        float d = -latent_reward({ep.latents.row(t), static_cast<size_t>(ep.latents.cols())},
                                 {ep.goal.data(), ep.goal.size()});
        max_goal_dist_ = std::max(max_goal_dist_, d);
    }
    size_ += ep.steps();
    episodes_.push_back(std::move(ep));
    while (size_ > capacity_ && !episodes_.empty()) {
        size_ -= episodes_.front().steps();
        episodes_.pop_front();
    }
    rebuild_cumulative();
}

void ReplayBuffer::rebuild_cumulative() {
    cumulative_.resize(episodes_.size());
    size_t acc = 0;
    for (size_t i = 0; i < episodes_.size(); ++i) {
        acc += episodes_[i].steps();
        cumulative_[i] = acc;
    }
}

std::vector<ReplayBuffer::Ref> ReplayBuffer::sample(int n, Rng& rng) const {
    if (size_ == 0) throw ContractError("sample: replay buffer is empty");
    if (n <= 0 || static_cast<size_t>(n) > size_)
        throw ContractError("sample: n=" + std::to_string(n) + " with " + std::to_string(size_) +
                            " stored");
    auto to_ref = [&](size_t flat) {
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), flat);
        int ep = static_cast<int>(it - cumulative_.begin());
        size_t before = ep == 0 ? 0 : cumulative_[ep - 1];
        return Ref{ep, static_cast<int>(flat - before)};
    };

    std::vector<Ref> out;
    out.reserve(n);
    if (static_cast<size_t>(n) * 2 >= size_) {
        // dense request: shuffle a full index array
        std::vector<size_t> idx(size_);
        for (size_t i = 0; i < size_; ++i) idx[i] = i;
        for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
            size_t j = i + static_cast<size_t>(rng.uniform_int(static_cast<int>(size_ - i)));
            std::swap(idx[i], idx[j]);
            out.push_back(to_ref(idx[i]));
        }
    } else {
        std::unordered_set<size_t> seen;
        while (out.size() < static_cast<size_t>(n)) {
            size_t flat = static_cast<size_t>(rng.uniform_int(static_cast<int>(size_)));
            if (!seen.insert(flat).second) continue;
            out.push_back(to_ref(flat));
        }
    }
    return out;
}

}  // namespace ccrig
