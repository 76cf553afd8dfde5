#pragma once

#include <string>
#include <vector>

namespace ccrig {

// Renders eval_median_dist vs. step from one or more run metrics files into
// a self-contained SVG: one median polyline per method plus a min/max band
// across that method's seeds (bands only when a method has several runs).
// Each metrics file must sit next to its run's config.resolved.json, which
// supplies the method label.
std::string plot_metrics_svg(const std::vector<std::string>& metrics_paths);

void plot_metrics_to_file(const std::vector<std::string>& metrics_paths, const std::string& out_path);

}  // namespace ccrig
