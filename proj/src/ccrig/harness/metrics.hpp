#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace ccrig {

// One run, one CSV. Fixed header; absent quantities stay empty. Steps must
// strictly increase within a file.
struct MetricsRow {
    int64_t step = 0;
    int episode = 0;
    std::string phase;
    std::optional<float> eval_median_dist, eval_mean_dist, latent_dist;
    std::optional<float> critic_loss, actor_loss;
    std::optional<float> vae_total, vae_recon, vae_kl, vae_ctx;
};

extern const char* kMetricsHeader;

class MetricsWriter {
public:
    explicit MetricsWriter(const std::string& path);
    void write(const MetricsRow& row);
    void flush();

private:
    std::ofstream out_;
    int64_t last_step_ = -1;
};

std::vector<MetricsRow> read_metrics(const std::string& path);

}  // namespace ccrig
