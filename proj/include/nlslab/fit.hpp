#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nlslab {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;   // in log y
    double residual = 0.0;    // RMS residual in log y
    int points_used = 0;
    std::string note;         // mentions dropped nonpositive points, if any
};

/// Least squares of log y against log x. Nonpositive points are dropped
/// with a note; at least 3 usable points are required.
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace nlslab
