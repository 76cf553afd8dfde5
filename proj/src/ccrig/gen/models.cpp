#include "ccrig/gen/models.hpp"

#include "ccrig/core/errors.hpp"
#include "ccrig/kernels/kernels.hpp"

namespace ccrig {

CCVAEParams make_ccvae(const GenConfig& cfg, Rng& rng) {
    CCVAEParams p;
    p.cfg = cfg;
    Rng r0 = rng.split("e0"), r1 = rng.split("e"), r2 = rng.split("d"), r3 = rng.split("d0");
    p.e0 = make_mlp(cfg.image_dim, cfg.enc_hidden, cfg.z_c, Act::Relu, Act::Identity, r0);
    p.e = make_mlp(cfg.image_dim + cfg.z_c, cfg.enc_hidden, 2 * cfg.z_t, Act::Relu, Act::Identity, r1);
    p.d = make_mlp(cfg.zbar(), cfg.dec_hidden, cfg.image_dim, Act::Relu, Act::Sigmoid, r2);
    p.d0 = make_mlp(cfg.z_c, cfg.dec_hidden, cfg.image_dim, Act::Relu, Act::Sigmoid, r3);
    return p;
}

VAEParams make_vae(const GenConfig& cfg, Rng& rng) {
    VAEParams p;
    p.cfg = cfg;
    p.z_dim = cfg.zbar();
    Rng r0 = rng.split("enc"), r1 = rng.split("dec");
    p.enc = make_mlp(cfg.image_dim, cfg.enc_hidden, 2 * p.z_dim, Act::Relu, Act::Identity, r0);
    p.dec = make_mlp(p.z_dim, cfg.dec_hidden, cfg.image_dim, Act::Relu, Act::Sigmoid, r1);
    return p;
}

Mat encode_context(const CCVAEParams& p, const Mat& s0) { return mlp_forward(p.e0, s0); }

GaussianParams encode_with_context(const CCVAEParams& p, const Mat& s, const Mat& z_c) {
    if (s.rows() != z_c.rows()) throw DimensionError("encode: batch sizes of s and z_c differ");
    Mat out = mlp_forward(p.e, hcat(s, z_c));
    GaussianParams g;
    g.mu = take_cols(out, 0, p.cfg.z_t);
    g.logvar = take_cols(out, p.cfg.z_t, 2 * p.cfg.z_t);
    kern::ops().clamp_fwd(g.logvar.data(), kLogvarMin, kLogvarMax, g.logvar.data(), g.logvar.size());
    return g;
}

GaussianParams encode(const CCVAEParams& p, const Mat& s, const Mat& s0) {
    return encode_with_context(p, s, encode_context(p, s0));
}

Mat decode(const CCVAEParams& p, const Mat& z_t, const Mat& z_c) {
    if (z_t.cols() != p.cfg.z_t || z_c.cols() != p.cfg.z_c)
        throw DimensionError("decode: latent dims " + std::to_string(z_t.cols()) + "/" +
                             std::to_string(z_c.cols()) + ", expected " + std::to_string(p.cfg.z_t) +
                             "/" + std::to_string(p.cfg.z_c));
    return mlp_forward(p.d, hcat(z_t, z_c));
}

Mat decode_context(const CCVAEParams& p, const Mat& z_c) {
    if (z_c.cols() != p.cfg.z_c) throw DimensionError("decode_context: bad z_c width");
    return mlp_forward(p.d0, z_c);
}

GaussianParams vae_encode(const VAEParams& p, const Mat& s) {
    Mat out = mlp_forward(p.enc, s);
    GaussianParams g;
    g.mu = take_cols(out, 0, p.z_dim);
    g.logvar = take_cols(out, p.z_dim, 2 * p.z_dim);
    kern::ops().clamp_fwd(g.logvar.data(), kLogvarMin, kLogvarMax, g.logvar.data(), g.logvar.size());
    return g;
}

Mat vae_decode(const VAEParams& p, const Mat& z) { return mlp_forward(p.dec, z); }

SampledGoal sample_goal(const CCVAEParams& p, const Mat& s0_row, Rng& rng) {
    SampledGoal g;
    g.z_g = Mat(1, p.cfg.z_t);
    for (size_t i = 0; i < g.z_g.size(); ++i) g.z_g[i] = rng.normal();
    g.zbar_g = hcat(g.z_g, encode_context(p, s0_row));
    return g;
}

std::vector<std::pair<std::string, Mat*>> named_params(CCVAEParams& p) {
    std::vector<std::pair<std::string, Mat*>> out;
    collect_named_params(p.e0, "e0", out);
    collect_named_params(p.e, "e", out);
    collect_named_params(p.d, "d", out);
    collect_named_params(p.d0, "d0", out);
    return out;
}

std::vector<std::pair<std::string, Mat*>> named_params(VAEParams& p) {
    std::vector<std::pair<std::string, Mat*>> out;
    collect_named_params(p.enc, "enc", out);
    collect_named_params(p.dec, "dec", out);
    return out;
}

}  // namespace ccrig
