#include "ccrig/gen/loss.hpp"

#include "ccrig/core/errors.hpp"

namespace ccrig {

namespace {

Mat normal_noise(int rows, int cols, Rng& rng) {
    Mat n(rows, cols);
    for (size_t i = 0; i < n.size(); ++i) n[i] = rng.normal();
    return n;
}

Var sq_err_sum(Tape& t, Var pred, Var target) {
    Var d = t.sub(pred, target);
    return t.sum(t.mul(d, d));
}

// 0.5·Σ (mu² + e^lv − 1 − lv) built on the tape
Var kl_term(Tape& t, Var mu, Var lv, int count) {
    Var k = t.add(t.sum(t.mul(mu, mu)), t.sum(t.exp(lv)));
    k = t.sub(k, t.sum(lv));
    k = t.add_scalar(k, -static_cast<float>(count));
    return t.scale(k, 0.5f);
}

void append_mlp(const TapedMLP& fwd, MLPParams& p, const std::string& prefix, BuiltLoss& out) {
    for (size_t i = 0; i < p.layers.size(); ++i) {
        out.params.emplace_back(prefix + ".l" + std::to_string(i) + ".w", &p.layers[i].w);
        out.leaves.push_back(fwd.weights[i]);
        out.params.emplace_back(prefix + ".l" + std::to_string(i) + ".b", &p.layers[i].b);
        out.leaves.push_back(fwd.biases[i]);
    }
}

}  // namespace

BuiltLoss loss_ccvae(Tape& t, CCVAEParams& p, const Mat& s0_batch, const Mat& st_batch,
                     const LossConfig& cfg, Rng& rng) {
    if (s0_batch.rows() == 0) throw ContractError("loss_ccvae: empty batch");
    if (!s0_batch.same_shape(st_batch)) throw DimensionError("loss_ccvae: s0/s_t batch shapes differ");
    const int B = s0_batch.rows();
    const int zt = p.cfg.z_t;

    BuiltLoss out;
    Var s0 = t.constant(s0_batch);
    Var st = t.constant(st_batch);

    auto e0_fwd = mlp_forward(t, p.e0, s0);
    Var z_c = e0_fwd.out;
    auto e_fwd = mlp_forward(t, p.e, t.concat_cols(st, z_c));
    Var mu = t.slice_cols(e_fwd.out, 0, zt);
    Var lv = t.clamp(t.slice_cols(e_fwd.out, zt, 2 * zt), kLogvarMin, kLogvarMax);
    Var z = t.reparameterize(mu, lv, normal_noise(B, zt, rng));
    auto d_fwd = mlp_forward(t, p.d, t.concat_cols(z, z_c));
    auto d0_fwd = mlp_forward(t, p.d0, z_c);

    Var recon = sq_err_sum(t, d_fwd.out, st);
    Var kl = kl_term(t, mu, lv, B * zt);
    Var ctx = sq_err_sum(t, d0_fwd.out, s0);
    Var loss = t.add(recon, t.scale(kl, cfg.beta));
    loss = t.add(loss, t.scale(ctx, cfg.context_recon_weight));

    out.loss = loss;
    out.stats = {t.scalar_value(loss), t.scalar_value(recon), t.scalar_value(kl), t.scalar_value(ctx)};
    append_mlp(e0_fwd, p.e0, "e0", out);
    append_mlp(e_fwd, p.e, "e", out);
    append_mlp(d_fwd, p.d, "d", out);
    append_mlp(d0_fwd, p.d0, "d0", out);
    return out;
}

BuiltLoss loss_vae(Tape& t, VAEParams& p, const Mat& batch, const LossConfig& cfg, Rng& rng) {
    if (batch.rows() == 0) throw ContractError("loss_vae: empty batch");
    const int B = batch.rows();
    const int z = p.z_dim;

    BuiltLoss out;
    Var s = t.constant(batch);
    auto enc_fwd = mlp_forward(t, p.enc, s);
    Var mu = t.slice_cols(enc_fwd.out, 0, z);
    Var lv = t.clamp(t.slice_cols(enc_fwd.out, z, 2 * z), kLogvarMin, kLogvarMax);
    Var zv = t.reparameterize(mu, lv, normal_noise(B, z, rng));
    auto dec_fwd = mlp_forward(t, p.dec, zv);

    Var recon = sq_err_sum(t, dec_fwd.out, s);
    Var kl = kl_term(t, mu, lv, B * z);
    Var loss = t.add(recon, t.scale(kl, cfg.beta));

    out.loss = loss;
    out.stats = {t.scalar_value(loss), t.scalar_value(recon), t.scalar_value(kl), 0.0};
    append_mlp(enc_fwd, p.enc, "enc", out);
    append_mlp(dec_fwd, p.dec, "dec", out);
    return out;
}

}  // namespace ccrig
