#include "ccrig/harness/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "ccrig/core/errors.hpp"
#include "ccrig/harness/config.hpp"
#include "ccrig/harness/formats.hpp"
#include "ccrig/harness/grid.hpp"
#include "ccrig/harness/metrics.hpp"
#include "ccrig/harness/plot.hpp"

namespace ccrig {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<int64_t> seed;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--seed", args.seed, "override config seed");
    cmd->add_option("--override", args.overrides, "dotted key=value override (repeatable)");
}

struct RunContext {
    ExperimentConfig cfg;
    fs::path out;

    std::string dataset_path() const { return cfg.dataset_path; }
    std::string model_path() const { return cfg.model_path; }
    std::string policy_path() const { return cfg.policy_path; }
};

RunContext make_context(const CommonArgs& args) {
    RunContext ctx;
    ctx.cfg = load_config_file(args.config_path, args.overrides);
    if (args.seed) ctx.cfg.seed = static_cast<uint64_t>(*args.seed);
    ctx.out = fs::path(args.out_dir);
    fs::create_directories(ctx.out);
    ctx.cfg.output_dir = ctx.out.string();
    if (ctx.cfg.dataset_path.empty()) ctx.cfg.dataset_path = (ctx.out / "dataset.ccrd").string();
    if (ctx.cfg.model_path.empty()) ctx.cfg.model_path = (ctx.out / "model.ckpt").string();
    if (ctx.cfg.policy_path.empty()) ctx.cfg.policy_path = (ctx.out / "policy.ckpt").string();
    atomic_write_file((ctx.out / "config.resolved.json").string(), config_to_json(ctx.cfg));
    return ctx;
}

Env make_env(const ExperimentConfig& cfg) { return Env(cfg.env_kind, cfg.env); }

struct Models {
    std::optional<CCVAEParams> ccvae;
    std::optional<VAEParams> vae;
};

std::string model_kind(Method m) { return m == Method::CCRig ? "ccvae" : "vae"; }

Models load_models(const RunContext& ctx) {
    Models m;
    if (ctx.cfg.method == Method::Oracle) return m;
    Rng init(ctx.cfg.seed);
    Rng model_rng = init.split("model-init");
    CheckpointInfo info;
    if (ctx.cfg.method == Method::CCRig) {
        m.ccvae = make_ccvae(ctx.cfg.gen, model_rng);
        auto params = named_params(*m.ccvae);
        info = load_checkpoint(ctx.model_path(), params);
    } else {
        m.vae = make_vae(ctx.cfg.gen, model_rng);
        auto params = named_params(*m.vae);
        info = load_checkpoint(ctx.model_path(), params);
    }
    if (info.kind != model_kind(ctx.cfg.method))
        throw FormatError("checkpoint kind '" + info.kind + "' does not fit method " +
                          method_name(ctx.cfg.method));
    if (info.config_hash != config_hash(ctx.cfg))
        std::fprintf(stderr, "warning: checkpoint %s was written under a different config\n",
                     ctx.model_path().c_str());
    return m;
}

MetricsRow eval_row(int64_t step, int episode, const char* phase, const RlProgress& p) {
    MetricsRow row;
    row.step = step;
    row.episode = episode;
    row.phase = phase;
    if (p.eval) {
        row.eval_median_dist = p.eval->median_dist;
        row.eval_mean_dist = p.eval->mean_dist;
        row.latent_dist = p.eval->median_latent_dist;
    }
    row.critic_loss = p.critic_loss;
    row.actor_loss = p.actor_loss;
    return row;
}

int cmd_collect(const CommonArgs& args) {
    RunContext ctx = make_context(args);
    Env env = make_env(ctx.cfg);
    Rng rng = Rng(ctx.cfg.seed).split("collect");
    Dataset ds = collect_random_dataset(env, ctx.cfg.dataset_episodes, rng);
    save_dataset(ds, ctx.dataset_path());
    std::printf("collected %zu episodes (%zu transitions) -> %s\n", ds.episodes.size(),
                ds.transition_count(), ctx.dataset_path().c_str());
    return 0;
}

// Returns the number of vae gradient steps run (for step offsets downstream).
int64_t train_model_inline(const RunContext& ctx, Models& models, const Dataset& ds,
                           MetricsWriter* metrics) {
    Rng init = Rng(ctx.cfg.seed).split("model-init");
    Rng train_rng = Rng(ctx.cfg.seed).split("vae-train");
    int64_t steps = 0;
    auto progress = [&](int step, const LossStats& s) {
        steps = step + 1;
        if (metrics && (step % 25 == 0)) {
            MetricsRow row;
            row.step = step + 1;
            row.phase = "vae";
            row.vae_total = static_cast<float>(s.total);
            row.vae_recon = static_cast<float>(s.recon);
            row.vae_kl = static_cast<float>(s.kl);
            row.vae_ctx = static_cast<float>(s.ctx);
            metrics->write(row);
        }
    };
    if (ctx.cfg.method == Method::CCRig) {
        models.ccvae = make_ccvae(ctx.cfg.gen, init);
        train_ccvae(*models.ccvae, ds, ctx.cfg.gen_train, train_rng, progress);
        auto params = named_params(*models.ccvae);
        save_checkpoint(ctx.model_path(), "ccvae", config_hash(ctx.cfg), params);
    } else if (ctx.cfg.method == Method::Rig) {
        models.vae = make_vae(ctx.cfg.gen, init);
        train_vae(*models.vae, ds, ctx.cfg.gen_train, train_rng, progress);
        auto params = named_params(*models.vae);
        save_checkpoint(ctx.model_path(), "vae", config_hash(ctx.cfg), params);
    } else {
        throw ConfigError("the oracle method has no generative model to train");
    }
    return steps;
}

int cmd_train_vae(const CommonArgs& args) {
    RunContext ctx = make_context(args);
    Dataset ds = load_dataset(ctx.dataset_path());
    MetricsWriter metrics((ctx.out / "metrics.csv").string());
    Models models;
    train_model_inline(ctx, models, ds, &metrics);
    std::printf("model saved -> %s\n", ctx.model_path().c_str());
    return 0;
}

TD3Params make_policy(const RunContext& ctx, const Env& env, const Models& models) {
    int dim = ctx.cfg.method == Method::Oracle ? env.state_dim() : ctx.cfg.gen.zbar();
    Rng rng = Rng(ctx.cfg.seed).split("td3-init");
    return make_td3(dim, dim, 2, ctx.cfg.rl, rng);
}

int cmd_pretrain(const CommonArgs& args) {
    RunContext ctx = make_context(args);
    Env env = make_env(ctx.cfg);
    Dataset ds = load_dataset(ctx.dataset_path());
    Models models = load_models(ctx);
    auto repr = make_representation(ctx.cfg.method, env,
                                    models.ccvae ? &*models.ccvae : nullptr,
                                    models.vae ? &*models.vae : nullptr);
    TD3Params td3 = make_policy(ctx, env, models);
    MetricsWriter metrics((ctx.out / "metrics.csv").string());
    auto progress = [&](const RlProgress& p) {
        metrics.write(eval_row(p.step + 1, p.episode, "pretrain", p));
        metrics.flush();
    };
    RunResult res = pretrain_offpolicy(env, *repr, ds, td3, ctx.cfg.rl, ctx.cfg.relabel,
                                       ctx.cfg.pipeline, ctx.cfg.seed, progress);
    auto params = named_params(td3);
    save_checkpoint(ctx.policy_path(), "td3", config_hash(ctx.cfg), params);
    std::printf("pretrain: eval median %.4f -> %.4f over %lld updates\n",
                static_cast<double>(res.initial_eval.median_dist),
                static_cast<double>(res.final_eval.median_dist),
                static_cast<long long>(res.steps));
    return 0;
}

int cmd_train(const CommonArgs& args) {
    RunContext ctx = make_context(args);
    Env env = make_env(ctx.cfg);
    MetricsWriter metrics((ctx.out / "metrics.csv").string());
    Models models;
    int64_t step_offset = 0;
    if (ctx.cfg.method != Method::Oracle) {
        if (fs::exists(ctx.model_path())) {
            models = load_models(ctx);
        } else {
            Dataset ds = load_dataset(ctx.dataset_path());
            step_offset = train_model_inline(ctx, models, ds, &metrics) + 1;
        }
    }
    auto repr = make_representation(ctx.cfg.method, env,
                                    models.ccvae ? &*models.ccvae : nullptr,
                                    models.vae ? &*models.vae : nullptr);
    TD3Params td3 = make_policy(ctx, env, models);
    auto progress = [&](const RlProgress& p) {
        metrics.write(eval_row(step_offset + p.step, p.episode, "train", p));
        metrics.flush();
    };
    RunResult res = run_online(env, *repr, td3, ctx.cfg.rl, ctx.cfg.relabel, ctx.cfg.pipeline,
                               ctx.cfg.seed, progress);
    auto params = named_params(td3);
    save_checkpoint(ctx.policy_path(), "td3", config_hash(ctx.cfg), params);
    std::printf("train: eval median %.4f -> %.4f over %lld env steps\n",
                static_cast<double>(res.initial_eval.median_dist),
                static_cast<double>(res.final_eval.median_dist), static_cast<long long>(res.steps));
    return 0;
}

int cmd_eval(const CommonArgs& args) {
    RunContext ctx = make_context(args);
    Env env = make_env(ctx.cfg);
    Models models = load_models(ctx);
    auto repr = make_representation(ctx.cfg.method, env,
                                    models.ccvae ? &*models.ccvae : nullptr,
                                    models.vae ? &*models.vae : nullptr);
    TD3Params td3 = make_policy(ctx, env, models);
    auto params = named_params(td3);
    load_checkpoint(ctx.policy_path(), params);
    EvalMetrics m = evaluate_policy(env, *repr, td3.actor, ctx.cfg.pipeline.eval_episodes,
                                    Rng(ctx.cfg.seed).split("cli-eval"));
    MetricsWriter metrics((ctx.out / "metrics.csv").string());
    RlProgress p;
    p.eval = m;
    metrics.write(eval_row(1, 0, "eval", p));
    std::printf("eval over %d episodes: median %.4f mean %.4f std %.4f (latent median %.4f)\n",
                m.episodes, static_cast<double>(m.median_dist), static_cast<double>(m.mean_dist),
                static_cast<double>(m.std_dist), static_cast<double>(m.median_latent_dist));
    return 0;
}

int cmd_sample_grid(const CommonArgs& args, int contexts, int samples) {
    RunContext ctx = make_context(args);
    Dataset ds = load_dataset(ctx.dataset_path());
    Models models = load_models(ctx);
    Rng rng = Rng(ctx.cfg.seed).split("grid");
    Image grid;
    if (ctx.cfg.method == Method::CCRig) grid = sample_grid(*models.ccvae, ds, contexts, samples, rng);
    else if (ctx.cfg.method == Method::Rig) grid = sample_grid(*models.vae, ds, contexts, samples, rng);
    else throw ConfigError("sample-grid needs a generative method (ccrig or rig)");
    std::string out_path = (ctx.out / "grid.ppm").string();
    write_ppm(grid, out_path);
    std::printf("grid (%d contexts x %d samples) -> %s\n", contexts, samples, out_path.c_str());
    return 0;
}

int cmd_plot(const std::vector<std::string>& metrics_files, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::string out_path = (fs::path(out_dir) / "plot.svg").string();
    plot_metrics_to_file(metrics_files, out_path);
    std::printf("plot -> %s\n", out_path.c_str());
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"context-conditioned latent-goal RL laboratory"};
    app.require_subcommand(1);

    CommonArgs collect_args, vae_args, pretrain_args, train_args, eval_args, grid_args;
    int grid_contexts = 8, grid_samples = 6;
    std::vector<std::string> plot_files;
    std::string plot_out;

    add_common(app.add_subcommand("collect", "roll random episodes into a dataset"), collect_args);
    add_common(app.add_subcommand("train-vae", "train the method's generative model"), vae_args);
    add_common(app.add_subcommand("pretrain", "off-policy RL from a dataset only"), pretrain_args);
    add_common(app.add_subcommand("train", "online RL with imagined goals"), train_args);
    add_common(app.add_subcommand("eval", "goal-image evaluation of a saved policy"), eval_args);
    CLI::App* grid_cmd = app.add_subcommand("sample-grid", "context/sample sheet as PPM");
    add_common(grid_cmd, grid_args);
    grid_cmd->add_option("--contexts", grid_contexts, "columns");
    grid_cmd->add_option("--samples", grid_samples, "sample rows per context");
    CLI::App* plot_cmd = app.add_subcommand("plot", "SVG learning curves from metrics files");
    plot_cmd->add_option("files", plot_files, "metrics.csv files")->required();
    plot_cmd->add_option("--out", plot_out, "output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 eats back to front
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        std::printf("%s", app.help().c_str());
        return 0;
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        std::fprintf(stderr, "%s", app.help().c_str());
        return 1;
    }

    try {
        if (app.got_subcommand("collect")) return cmd_collect(collect_args);
        if (app.got_subcommand("train-vae")) return cmd_train_vae(vae_args);
        if (app.got_subcommand("pretrain")) return cmd_pretrain(pretrain_args);
        if (app.got_subcommand("train")) return cmd_train(train_args);
        if (app.got_subcommand("eval")) return cmd_eval(eval_args);
        if (app.got_subcommand("sample-grid")) return cmd_sample_grid(grid_args, grid_contexts, grid_samples);
        if (app.got_subcommand("plot")) return cmd_plot(plot_files, plot_out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}

}  // namespace ccrig
