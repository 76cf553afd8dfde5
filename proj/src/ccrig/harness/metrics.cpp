#include "ccrig/harness/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ccrig/core/errors.hpp"

namespace ccrig {

const char* kMetricsHeader =
    "step,episode,phase,eval_median_dist,eval_mean_dist,latent_dist,critic_loss,actor_loss,"
    "vae_total,vae_recon,vae_kl,vae_ctx";

namespace {

std::string fmt(const std::optional<float>& v) {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(*v));
    return buf;
}

std::optional<float> parse_opt(const std::string& s, const std::string& path, size_t line) {
    if (s.empty()) return std::nullopt;
    try {
        size_t used = 0;
        float v = std::stof(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw FormatError("bad number '" + s + "' at " + path + ":" + std::to_string(line));
    }
}

}  // namespace

MetricsWriter::MetricsWriter(const std::string& path) : out_(path, std::ios::trunc) {
    if (!out_) throw FormatError("cannot open metrics file: " + path);
    out_ << kMetricsHeader << "\n";
}

void MetricsWriter::write(const MetricsRow& row) {
    if (row.step <= last_step_)
        throw ContractError("metrics rows must have strictly increasing steps (" +
                            std::to_string(row.step) + " after " + std::to_string(last_step_) + ")");
    last_step_ = row.step;
    out_ << row.step << ',' << row.episode << ',' << row.phase << ',' << fmt(row.eval_median_dist)
         << ',' << fmt(row.eval_mean_dist) << ',' << fmt(row.latent_dist) << ','
         << fmt(row.critic_loss) << ',' << fmt(row.actor_loss) << ',' << fmt(row.vae_total) << ','
         << fmt(row.vae_recon) << ',' << fmt(row.vae_kl) << ',' << fmt(row.vae_ctx) << '\n';
}

void MetricsWriter::flush() { out_.flush(); }

std::vector<MetricsRow> read_metrics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open metrics file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader)
        throw FormatError("bad metrics header in " + path);
    std::vector<MetricsRow> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        if (std::count(line.begin(), line.end(), ',') != 11)
            throw FormatError("expected 12 columns at " + path + ":" + std::to_string(lineno));
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 12) cells.push_back("");  // getline eats a trailing empty cell
        MetricsRow r;
        try {
            r.step = std::stoll(cells[0]);
            r.episode = std::stoi(cells[1]);
        } catch (const std::exception&) {
            throw FormatError("bad step/episode at " + path + ":" + std::to_string(lineno));
        }
        r.phase = cells[2];
        r.eval_median_dist = parse_opt(cells[3], path, lineno);
        r.eval_mean_dist = parse_opt(cells[4], path, lineno);
        r.latent_dist = parse_opt(cells[5], path, lineno);
        r.critic_loss = parse_opt(cells[6], path, lineno);
        r.actor_loss = parse_opt(cells[7], path, lineno);
        r.vae_total = parse_opt(cells[8], path, lineno);
        r.vae_recon = parse_opt(cells[9], path, lineno);
        r.vae_kl = parse_opt(cells[10], path, lineno);
        r.vae_ctx = parse_opt(cells[11], path, lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace ccrig
