#include "ccrig/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ccrig/core/errors.hpp"
#include "ccrig/harness/formats.hpp"
#include "ccrig/harness/metrics.hpp"

namespace ccrig {

namespace {

struct Series {
    // step → values across seeds
    std::map<int64_t, std::vector<float>> by_step;
};

std::string method_of(const std::string& metrics_path) {
    namespace fs = std::filesystem;
    fs::path cfg = fs::path(metrics_path).parent_path() / "config.resolved.json";
    std::ifstream in(cfg);
    if (!in) throw FormatError("missing " + cfg.string() + " next to " + metrics_path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("method")) throw FormatError("bad config at " + cfg.string());
    return j.at("method").get<std::string>();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string plot_metrics_svg(const std::vector<std::string>& metrics_paths) {
    if (metrics_paths.empty()) throw ContractError("plot: need at least one metrics file");

    std::map<std::string, Series> methods;
    std::map<std::string, int> run_counts;
    int64_t max_step = 1;
    float max_y = 0.0f;
    for (const std::string& path : metrics_paths) {
        std::string method = method_of(path);
        run_counts[method]++;
        for (const MetricsRow& row : read_metrics(path)) {
            if (!row.eval_median_dist) continue;
            methods[method].by_step[row.step].push_back(*row.eval_median_dist);
            max_step = std::max(max_step, row.step);
            max_y = std::max(max_y, *row.eval_median_dist);
        }
    }
    if (methods.empty()) throw FormatError("plot: no eval rows in the given metrics files");
    max_y = std::max(max_y * 1.1f, 1e-3f);

    const double W = 800, H = 500, ml = 70, mr = 160, mt = 30, mb = 60;
    const double pw = W - ml - mr, ph = H - mt - mb;
    auto X = [&](double step) { return ml + pw * (step / static_cast<double>(max_step)); };
    auto Y = [&](double v) { return mt + ph * (1.0 - v / max_y); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double sx = max_step * i / 5.0;
        double vy = max_y * i / 5.0;
        svg << "<text x=\"" << X(sx) << "\" y=\"" << mt + ph + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << static_cast<int64_t>(sx) << "</text>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << Y(vy) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(vy) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 15
        << "\" font-size=\"14\" text-anchor=\"middle\">environment steps</text>\n";
    svg << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
        << ")\">median final distance</text>\n";

    int color_idx = 0;
    for (const auto& [method, series] : methods) {
        const char* color = kPalette[color_idx % 6];
        // min/max band across seeds, only meaningful with several runs
        if (run_counts[method] > 1) {
            std::ostringstream lo, hi;
            for (const auto& [step, vals] : series.by_step)
                lo << X(static_cast<double>(step)) << ","
                   << Y(*std::min_element(vals.begin(), vals.end())) << " ";
            for (auto it = series.by_step.rbegin(); it != series.by_step.rend(); ++it)
                hi << X(static_cast<double>(it->first)) << ","
                   << Y(*std::max_element(it->second.begin(), it->second.end())) << " ";
            svg << "<polygon class=\"band\" points=\"" << lo.str() << hi.str() << "\" fill=\"" << color
                << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
        }
        std::ostringstream pts;
        for (const auto& [step, vals] : series.by_step) {
            std::vector<float> v = vals;
            std::sort(v.begin(), v.end());
            float med = v.size() % 2 ? v[v.size() / 2] : 0.5f * (v[v.size() / 2 - 1] + v[v.size() / 2]);
            pts << X(static_cast<double>(step)) << "," << Y(med) << " ";
        }
        svg << "<polyline class=\"curve\" points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
            << color << "\" stroke-width=\"2\"/>\n";
        double ly = mt + 20 + 22 * color_idx;
        svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 36
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly + 4 << "\" font-size=\"13\">" << method
            << "</text>\n";
        color_idx++;
    }
    svg << "</svg>\n";
    return svg.str();
}

void plot_metrics_to_file(const std::vector<std::string>& metrics_paths, const std::string& out_path) {
    atomic_write_file(out_path, plot_metrics_svg(metrics_paths));
}

}  // namespace ccrig
