#include "nlslab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> logs;
    int dropped = 0;
    for (const auto& [x, y] : points) {
        if (x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y)) {
            logs.emplace_back(std::log(x), std::log(y));
        } else {
            ++dropped;
        }
    }
    if (logs.size() < 3) {
        throw std::invalid_argument("fit_loglog_slope: fewer than 3 positive points");
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [lx, ly] : logs) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(logs.size());
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) {
        throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
    }

    SlopeFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    double rss = 0.0;
    for (const auto& [lx, ly] : logs) {
        const double e = ly - (fit.slope * lx + fit.intercept);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / m);
    fit.points_used = static_cast<int>(logs.size());
    if (dropped > 0) {
        fit.note = std::to_string(dropped) + " nonpositive point(s) dropped";
    }
    return fit;
}

}  // namespace nlslab
