#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nlslab {

/// Minimal static SVG line chart (optionally log-log) for experiment
/// artifacts. Deterministic output: fixed canvas, fixed formatting.
struct SvgSeries {
    std::string label;
    std::string color;  // e.g. "#1f77b4"
    std::vector<std::pair<double, double>> points;
};

struct SvgChart {
    std::string title;
    bool loglog = false;
    std::vector<SvgSeries> series;
};

std::string render_svg(const SvgChart& chart);
void write_svg(const std::string& path, const SvgChart& chart);

}  // namespace nlslab
