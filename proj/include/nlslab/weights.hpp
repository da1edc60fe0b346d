#pragma once

#include <array>
#include <functional>

#include "nlslab/grid.hpp"

namespace nlslab {

/// The 2D convex interaction weight a(x1,x2) = f(|x1-x2|):
///   inner branch  f(r) = r^2 (1 - log(r/M)) / (2M)   for r <  M/sqrt(e)
///   outer branch  f(r) = 100 r + outer_offset        for r >  M
/// joined by a certified-convex C^2 polynomial bridge. Only derivatives
/// of f enter any computed quantity; the outer additive offset is what
/// makes a convex C^2 join possible (the slope gap 100 - 1/sqrt(e) must
/// be absorbed with f' nondecreasing, which caps the attainable value
/// gain across the bridge).
struct WeightSpec {
    double M = 0.0;
    double r_inner = 0.0;  // M / sqrt(e)
    double r_outer = 0.0;  // M
    /// f on the bridge as a polynomial in t = (r - r_inner) / (r_outer - r_inner).
    std::array<double, 6> bridge{};
    double outer_offset = 0.0;
    double delta_coeff = 0.0;  // coefficient of delta_{x1=x2} in -Lap Lap a: 4 pi / M

    double f(double r) const;
    double fp(double r) const;
    double fpp(double r) const;
    /// Lap a as a function of r = |x1 - x2| (per-particle Laplacian).
    double lap(double r) const;
    /// Regular density of -Lap Lap a (zero on the inner region; the inner
    /// log Laplacian concentrates entirely at r = 0).
    double bilap_regular(double r) const;
};

/// Pointwise weight calculus at radius r.
struct WeightCalculus {
    double f = 0.0;
    double fp = 0.0;
    double lap = 0.0;
    bool lap_singular = false;  // set at r = 0 where Lap a diverges logarithmically
};

WeightSpec build_weight(double M);
WeightCalculus weight_calculus(const WeightSpec& spec, double r);

struct BiharmonicSplit {
    double delta_coeff;
    std::function<double(double)> regular_density;
};
BiharmonicSplit biharmonic_split(const WeightSpec& spec);

/// The paper's balancing choice M = T^{1/3} (constant 1).
double balance_M(double T);

/// Radial weight profile for the virial machinery: f', f'', Lap a and the
/// regular part of -Lap Lap a, with a flag for a delta at the origin.
struct RadialWeight {
    std::function<double(double)> fp;
    std::function<double(double)> fpp;
    std::function<double(double)> lap;
    std::function<double(double)> bilap_regular;
    bool has_delta = false;
};

RadialWeight radial_weight(const WeightSpec& spec);

}  // namespace nlslab
