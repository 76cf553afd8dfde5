#include "ccrig/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ccrig/core/errors.hpp"

namespace ccrig {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError("unknown config key: " + (prefix.empty() ? it.key() : prefix + "." + it.key()));
    }
}

template <typename T>
void get_to(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) obj.at(key).get_to(out);
}

void apply_env(const json& j, ExperimentConfig& cfg) {
    reject_unknown(j, {"kind", "horizon", "max_step", "image_size", "min_color_brightness"}, "env");
    if (j.contains("kind")) {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "nav") cfg.env_kind = EnvKind::Nav;
        else if (kind == "pusher") cfg.env_kind = EnvKind::Pusher;
        else throw ConfigError("env.kind must be nav or pusher, got " + kind);
    }
    get_to(j, "horizon", cfg.env.horizon);
    get_to(j, "max_step", cfg.env.max_step);
    get_to(j, "image_size", cfg.env.image_size);
    get_to(j, "min_color_brightness", cfg.env.min_color_brightness);
    if (cfg.env.horizon < 1) throw ConfigError("env.horizon must be >= 1");
    if (cfg.env.max_step <= 0.0f) throw ConfigError("env.max_step must be > 0");
}

void apply_dataset(const json& j, ExperimentConfig& cfg) {
    reject_unknown(j, {"episodes", "path"}, "dataset");
    get_to(j, "episodes", cfg.dataset_episodes);
    get_to(j, "path", cfg.dataset_path);
}

void apply_vae(const json& j, ExperimentConfig& cfg) {
    reject_unknown(j,
                   {"z_t", "z_c", "beta", "context_recon_weight", "enc_hidden", "dec_hidden",
                    "epochs", "batch", "lr", "kl_warmup_frac"},
                   "vae");
    get_to(j, "z_t", cfg.gen.z_t);
    get_to(j, "z_c", cfg.gen.z_c);
    get_to(j, "enc_hidden", cfg.gen.enc_hidden);
    get_to(j, "dec_hidden", cfg.gen.dec_hidden);
    get_to(j, "beta", cfg.gen_train.loss.beta);
    get_to(j, "context_recon_weight", cfg.gen_train.loss.context_recon_weight);
    get_to(j, "epochs", cfg.gen_train.epochs);
    get_to(j, "batch", cfg.gen_train.batch);
    get_to(j, "lr", cfg.gen_train.lr);
    get_to(j, "kl_warmup_frac", cfg.gen_train.kl_warmup_frac);
    if (cfg.gen_train.loss.beta < 0.0f) throw ConfigError("vae.beta must be >= 0");
}

void apply_rl(const json& j, ExperimentConfig& cfg) {
    reject_unknown(j,
                   {"gamma", "tau", "policy_noise", "noise_clip", "policy_delay", "expl_sigma",
                    "batch", "lr", "hidden", "buffer_capacity", "relabel_future", "relabel_prior",
                    "relabel_original"},
                   "rl");
    get_to(j, "gamma", cfg.rl.gamma);
    get_to(j, "tau", cfg.rl.tau);
    get_to(j, "policy_noise", cfg.rl.policy_noise);
    get_to(j, "noise_clip", cfg.rl.noise_clip);
    get_to(j, "policy_delay", cfg.rl.policy_delay);
    get_to(j, "expl_sigma", cfg.rl.expl_sigma);
    get_to(j, "batch", cfg.rl.batch);
    get_to(j, "lr", cfg.rl.lr);
    get_to(j, "hidden", cfg.rl.hidden);
    get_to(j, "buffer_capacity", cfg.pipeline.buffer_capacity);
    get_to(j, "relabel_future", cfg.relabel.future);
    get_to(j, "relabel_prior", cfg.relabel.prior);
    get_to(j, "relabel_original", cfg.relabel.original);
    float s = cfg.relabel.future + cfg.relabel.prior + cfg.relabel.original;
    if (std::fabs(s - 1.0f) > 1e-5f) throw ConfigError("rl.relabel_* weights must sum to 1");
}

void apply_pipeline(const json& j, ExperimentConfig& cfg) {
    reject_unknown(j,
                   {"online_steps", "pretrain_steps", "warmup_steps", "updates_per_step",
                    "eval_interval", "eval_episodes", "model_path", "policy_path"},
                   "pipeline");
    get_to(j, "online_steps", cfg.pipeline.online_steps);
    get_to(j, "pretrain_steps", cfg.pipeline.pretrain_steps);
    get_to(j, "warmup_steps", cfg.pipeline.warmup_steps);
    get_to(j, "updates_per_step", cfg.pipeline.updates_per_step);
    get_to(j, "eval_interval", cfg.pipeline.eval_interval);
    get_to(j, "eval_episodes", cfg.pipeline.eval_episodes);
    get_to(j, "model_path", cfg.model_path);
    get_to(j, "policy_path", cfg.policy_path);
}

json parse_override_value(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) return json(text);  // bare string
    return v;
}

}  // namespace

ExperimentConfig load_config(const std::string& json_text, const std::vector<std::string>& overrides) {
    json root = json::parse(json_text, nullptr, false);
    if (root.is_discarded()) throw ConfigError("config is not valid JSON");
    if (!root.is_object()) throw ConfigError("config root must be an object");

    for (const std::string& ov : overrides) {
        size_t eq = ov.find('=');
        if (eq == std::string::npos) throw ConfigError("override must be key=value: " + ov);
        std::string path = ov.substr(0, eq);
        json value = parse_override_value(ov.substr(eq + 1));
        json* node = &root;
        std::stringstream ss(path);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, '.')) parts.push_back(part);
        if (parts.empty()) throw ConfigError("override has empty key: " + ov);
        for (size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
        (*node)[parts.back()] = value;
    }

    reject_unknown(root, {"env", "method", "seed", "dataset", "vae", "rl", "pipeline", "output_dir"},
                   "");
    ExperimentConfig cfg;
    if (root.contains("env")) apply_env(root.at("env"), cfg);
    if (root.contains("method")) cfg.method = method_from_name(root.at("method").get<std::string>());
    if (root.contains("seed")) cfg.seed = root.at("seed").get<uint64_t>();
    if (root.contains("dataset")) apply_dataset(root.at("dataset"), cfg);
    if (root.contains("vae")) apply_vae(root.at("vae"), cfg);
    if (root.contains("rl")) apply_rl(root.at("rl"), cfg);
    if (root.contains("pipeline")) apply_pipeline(root.at("pipeline"), cfg);
    if (root.contains("output_dir")) cfg.output_dir = root.at("output_dir").get<std::string>();

    cfg.gen.image_dim = cfg.env.image_size * cfg.env.image_size * 3;
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str(), overrides);
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["env"] = {{"kind", cfg.env_kind == EnvKind::Nav ? "nav" : "pusher"},
                {"horizon", cfg.env.horizon},
                {"max_step", cfg.env.max_step},
                {"image_size", cfg.env.image_size},
                {"min_color_brightness", cfg.env.min_color_brightness}};
    j["method"] = method_name(cfg.method);
    j["seed"] = cfg.seed;
    j["dataset"] = {{"episodes", cfg.dataset_episodes}, {"path", cfg.dataset_path}};
    j["vae"] = {{"z_t", cfg.gen.z_t},
                {"z_c", cfg.gen.z_c},
                {"beta", cfg.gen_train.loss.beta},
                {"context_recon_weight", cfg.gen_train.loss.context_recon_weight},
                {"enc_hidden", cfg.gen.enc_hidden},
                {"dec_hidden", cfg.gen.dec_hidden},
                {"epochs", cfg.gen_train.epochs},
                {"batch", cfg.gen_train.batch},
                {"lr", cfg.gen_train.lr},
                {"kl_warmup_frac", cfg.gen_train.kl_warmup_frac}};
    j["rl"] = {{"gamma", cfg.rl.gamma},
               {"tau", cfg.rl.tau},
               {"policy_noise", cfg.rl.policy_noise},
               {"noise_clip", cfg.rl.noise_clip},
               {"policy_delay", cfg.rl.policy_delay},
               {"expl_sigma", cfg.rl.expl_sigma},
               {"batch", cfg.rl.batch},
               {"lr", cfg.rl.lr},
               {"hidden", cfg.rl.hidden},
               {"buffer_capacity", cfg.pipeline.buffer_capacity},
               {"relabel_future", cfg.relabel.future},
               {"relabel_prior", cfg.relabel.prior},
               {"relabel_original", cfg.relabel.original}};
    j["pipeline"] = {{"online_steps", cfg.pipeline.online_steps},
                     {"pretrain_steps", cfg.pipeline.pretrain_steps},
                     {"warmup_steps", cfg.pipeline.warmup_steps},
                     {"updates_per_step", cfg.pipeline.updates_per_step},
                     {"eval_interval", cfg.pipeline.eval_interval},
                     {"eval_episodes", cfg.pipeline.eval_episodes},
                     {"model_path", cfg.model_path},
                     {"policy_path", cfg.policy_path}};
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

uint64_t config_hash(const ExperimentConfig& cfg) {
    std::string s = config_to_json(cfg);
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace ccrig
