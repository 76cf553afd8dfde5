#pragma once

#include <string>
#include <vector>

#include "ccrig/env/env.hpp"
#include "ccrig/gen/train.hpp"
#include "ccrig/pipeline/repr.hpp"
#include "ccrig/pipeline/runner.hpp"
#include "ccrig/rl/td3.hpp"

namespace ccrig {

// Everything a run needs, materialized with defaults. JSON round-trips
// strictly: unknown keys are rejected with their full path.
struct ExperimentConfig {
    EnvKind env_kind = EnvKind::Nav;
    EnvConfig env;
    Method method = Method::CCRig;
    uint64_t seed = 0;

    int dataset_episodes = 1000;
    std::string dataset_path;  // empty → <out>/dataset.ccrd

    GenConfig gen;
    GenTrainConfig gen_train;

    TD3Config rl;
    RelabelStrategy relabel;

    RunnerConfig pipeline;
    std::string model_path;   // empty → <out>/model.ckpt
    std::string policy_path;  // empty → <out>/policy.ckpt

    std::string output_dir = "run";
};

// Parse with strict key checking; `overrides` are dotted key=value pairs
// applied on top of the file content before validation.
ExperimentConfig load_config(const std::string& json_text, const std::vector<std::string>& overrides);
ExperimentConfig load_config_file(const std::string& path, const std::vector<std::string>& overrides);

// Fully-materialized echo; parsing it again reproduces the config.
std::string config_to_json(const ExperimentConfig& cfg);

// FNV-1a over the resolved JSON; stored in checkpoints for drift warnings.
uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace ccrig
