#include "nlslab/weights.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlslab {

namespace {

double inner_f(double r, double M) {
    return r * r * (1.0 - std::log(r / M)) / (2.0 * M);
}
double inner_fp(double r, double M) {
    return r * (1.0 - 2.0 * std::log(r / M)) / (2.0 * M);
}
double inner_fpp(double r, double M) {
    return (-1.0 - 2.0 * std::log(r / M)) / (2.0 * M);
}

}  // namespace

double WeightSpec::f(double r) const {
    r = std::abs(r);
    if (r < r_inner) return inner_f(r == 0.0 ? 1e-300 : r, M);
    if (r > r_outer) return 100.0 * r + outer_offset;
    const double t = (r - r_inner) / (r_outer - r_inner);
    double acc = 0.0;
    for (int k = 5; k >= 0; --k) acc = acc * t + bridge[k];
    return acc;
}

double WeightSpec::fp(double r) const {
    r = std::abs(r);
    if (r == 0.0) return 0.0;
    if (r < r_inner) return inner_fp(r, M);
    if (r > r_outer) return 100.0;
    const double h = r_outer - r_inner;
    const double t = (r - r_inner) / h;
    double acc = 0.0;
    for (int k = 5; k >= 1; --k) acc = acc * t + k * bridge[k];
    return acc / h;
}

double WeightSpec::fpp(double r) const {
    r = std::abs(r);
    if (r < r_inner) return inner_fpp(r == 0.0 ? 1e-300 : r, M);
    if (r > r_outer) return 0.0;
    const double h = r_outer - r_inner;
    const double t = (r - r_inner) / h;
    double acc = 0.0;
    for (int k = 5; k >= 2; --k) acc = acc * t + k * (k - 1) * bridge[k];
    return acc / (h * h);
}

double WeightSpec::lap(double r) const {
    r = std::abs(r);
    if (r == 0.0) throw std::domain_error("WeightSpec::lap: singular at r = 0");
    if (r < r_inner) return 2.0 * std::log(M / r) / M;
    if (r > r_outer) return 100.0 / r;
    return fpp(r) + fp(r) / r;
}

double WeightSpec::bilap_regular(double r) const {
    r = std::abs(r);
    if (r < r_inner) return 0.0;
    if (r > r_outer) return -100.0 / (r * r * r);
    const double h = r_outer - r_inner;
    const double t = (r - r_inner) / h;
    double p3 = 0.0, p4 = 0.0;
    for (int k = 5; k >= 3; --k) p3 = p3 * t + k * (k - 1) * (k - 2) * bridge[k];
    for (int k = 5; k >= 4; --k) p4 = p4 * t + k * (k - 1) * (k - 2) * (k - 3) * bridge[k];
    const double f1 = fp(r), f2 = fpp(r);
    const double f3 = p3 / (h * h * h);
    const double f4 = p4 / (h * h * h * h);
    const double lap1 = f3 + f2 / r - f1 / (r * r);
    const double lap2 = f4 + f3 / r - 2.0 * f2 / (r * r) + 2.0 * f1 / (r * r * r);
    return -(lap2 + lap1 / r);
}

WeightSpec build_weight(double M) {
    if (!(M > 0.0)) throw std::invalid_argument("build_weight: M must be positive");

    double ri = M / std::sqrt(std::numbers::e);
    double ro = M;
    for (int attempt = 0; attempt <= 2; ++attempt) {
        WeightSpec w;
        w.M = M;
        w.r_inner = ri;
        w.r_outer = ro;
        w.delta_coeff = 4.0 * std::numbers::pi / M;

        // Build the bridge in derivative space: f' is the cubic Hermite
        // monotone step from the inner slope to 100 with f'' = 0 at both
        // ends; f is its integral. This keeps f'' >= 0 on the bridge and
        // makes the join C^2 exactly. The outer value offset follows.
        const double h = ro - ri;
        const double a = inner_fp(ri, M);
        const double b = 100.0;
        const double fi = inner_f(ri, M);
        w.bridge = {fi, h * a, 0.0, h * (b - a), -0.5 * h * (b - a), 0.0};
        w.outer_offset = w.f(ro * (1.0 - 1e-15)) - 100.0 * ro;

        bool convex = true;
        const double lo = std::log(1e-5 * M), hiiv = std::log(8.0 * M);
        for (int i = 0; i < 10000 && convex; ++i) {
            const double r = std::exp(lo + (hiiv - lo) * i / 9999.0);
            if (w.fpp(r) < -1e-10 || w.fp(r) < -1e-10) convex = false;
        }
        if (convex) return w;
        // Junction nudging: shrink the bridge interval inward by 5% per
        // attempt (at most 10% total).
        const double shift = 0.05 * h;
        ri += shift;
        ro -= shift;
    }
    throw std::runtime_error("build_weight: convexity unachievable after junction nudging");
}

WeightCalculus weight_calculus(const WeightSpec& spec, double r) {
    WeightCalculus out;
    if (r < 0.0) throw std::invalid_argument("weight_calculus: r must be >= 0");
    if (r == 0.0) {
        out.f = 0.0;
        out.fp = 0.0;
        out.lap = std::numeric_limits<double>::infinity();
        out.lap_singular = true;
        return out;
    }
    out.f = spec.f(r);
    out.fp = spec.fp(r);
    out.lap = spec.lap(r);
    return out;
}

BiharmonicSplit biharmonic_split(const WeightSpec& spec) {
    return {spec.delta_coeff, [spec](double r) { return spec.bilap_regular(r); }};
}

double balance_M(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("balance_M: T must be positive");
    return std::cbrt(T);
}

RadialWeight radial_weight(const WeightSpec& spec) {
    RadialWeight w;
    w.fp = [spec](double r) { return spec.fp(r); };
    w.fpp = [spec](double r) { return spec.fpp(r); };
    w.lap = [spec](double r) { return spec.lap(r); };
    w.bilap_regular = [spec](double r) { return spec.bilap_regular(r); };
    w.has_delta = true;
    return w;
}

}  // namespace nlslab
