#include "nlslab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nlslab/io.hpp"

namespace nlslab {

namespace {
constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 40.0, kBottom = 40.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}
}  // namespace

std::string render_svg(const SvgChart& chart) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : chart.series) {
        for (auto [x, y] : s.points) {
            if (chart.loglog) {
                if (x <= 0.0 || y <= 0.0) continue;
                x = std::log10(x);
                y = std::log10(y);
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin <= xmax)) throw std::invalid_argument("render_svg: no drawable points");
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

    auto px = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double y) {
        return kHeight - kBottom - (y - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
       << "font-family=\"monospace\" font-size=\"14\">" << chart.title
       << (chart.loglog ? " (log-log)" : "") << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
       << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    os << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 8
       << "\" font-family=\"monospace\" font-size=\"11\">x:[" << format_double(xmin) << ","
       << format_double(xmax) << "] y:[" << format_double(ymin) << "," << format_double(ymax)
       << "]</text>\n";

    double legend_y = kTop + 14.0;
    for (const auto& s : chart.series) {
        std::ostringstream pts;
        for (auto [x, y] : s.points) {
            if (chart.loglog) {
                if (x <= 0.0 || y <= 0.0) continue;
                x = std::log10(x);
                y = std::log10(y);
            }
            pts << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
        }
        os << "<polyline fill=\"none\" stroke=\"" << s.color
           << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        os << "<text x=\"" << kLeft + 8 << "\" y=\"" << fmt(legend_y) << "\" fill=\""
           << s.color << "\" font-family=\"monospace\" font-size=\"11\">" << s.label
           << "</text>\n";
        legend_y += 14.0;
    }
    os << "</svg>\n";
    return os.str();
}

void write_svg(const std::string& path, const SvgChart& chart) {
    write_text_file(path, render_svg(chart));
}

}  // namespace nlslab
