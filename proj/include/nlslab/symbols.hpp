#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nlslab/spectral.hpp"

namespace nlslab {

using Vec2 = std::array<double, 2>;

/// Frequency triple with sorted dyadic shells N1 >= N2 >= N3 and
/// |xi_i| in [N_i, 2 N_i).
struct FrequencyTriple {
    Vec2 xi1, xi2, xi3;
    double N1, N2, N3;

    void validate() const;
};

enum class RegionTag { Omega1, Omega2, Omega3, Omega4 };

std::string region_name(RegionTag tag);

/// sigma = |xi1+xi2+xi3| [m(xi1+xi2+xi3) - m(xi1)m(xi2)m(xi3)] / (m1 m2 m3).
double sigma(const FrequencyTriple& triple, double N, double s);

/// Region classification with the factor-4 reading of "much less" /
/// "comparable or larger": Omega1 if N1 < N/4; Omega2 if N1 >= N/4 > N2;
/// Omega3 if N2 >= N/4 > N3; Omega4 if N3 >= N/4.
RegionTag classify(double N1, double N2, double N3, double N);

/// a2 = a3 = (N / (|xi1||xi2|)) sigma; a4 = (N^2 / (|xi1||xi2||xi3|)) sigma.
double normalized_symbol(const FrequencyTriple& triple, double N, double s, RegionTag region);

struct ScanResult {
    double sup_abs = 0.0;
    FrequencyTriple argmax{};
    long samples = 0;
};

/// Deterministic stratified scan over shells spanning the region;
/// Omega1 returns exactly 0 (the symbol vanishes there identically).
ScanResult scan_bounds(RegionTag region, double N, double s, long sample_count,
                       std::uint64_t rng_seed);

}  // namespace nlslab
