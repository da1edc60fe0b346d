#include "nlslab/symbols.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nlslab/rng.hpp"

namespace nlslab {

namespace {
double mag(const Vec2& v) { return std::hypot(v[0], v[1]); }

bool in_shell(const Vec2& v, double Ni) {
    const double m = mag(v);
    return m >= Ni * (1.0 - 1e-12) && m < 2.0 * Ni;
}
}  // namespace

void FrequencyTriple::validate() const {
    if (!(N1 >= N2 && N2 >= N3 && N3 > 0.0)) {
        throw std::invalid_argument("FrequencyTriple: shells must satisfy N1 >= N2 >= N3 > 0");
    }
    if (!in_shell(xi1, N1) || !in_shell(xi2, N2) || !in_shell(xi3, N3)) {
        throw std::invalid_argument("FrequencyTriple: xi_i must lie in its declared shell");
    }
}

std::string region_name(RegionTag tag) {
    switch (tag) {
        case RegionTag::Omega1: return "Omega1";
        case RegionTag::Omega2: return "Omega2";
        case RegionTag::Omega3: return "Omega3";
        case RegionTag::Omega4: return "Omega4";
    }
    return "?";
}

double sigma(const FrequencyTriple& triple, double N, double s) {
    const Vec2 sum{triple.xi1[0] + triple.xi2[0] + triple.xi3[0],
                   triple.xi1[1] + triple.xi2[1] + triple.xi3[1]};
    const double m1 = i_multiplier_value(mag(triple.xi1), N, s);
    const double m2 = i_multiplier_value(mag(triple.xi2), N, s);
    const double m3 = i_multiplier_value(mag(triple.xi3), N, s);
    const double ms = i_multiplier_value(mag(sum), N, s);
    return mag(sum) * (ms - m1 * m2 * m3) / (m1 * m2 * m3);
}

RegionTag classify(double N1, double N2, double N3, double N) {
    if (!(N1 >= N2 && N2 >= N3)) {
        throw std::invalid_argument("classify: shells must be sorted N1 >= N2 >= N3");
    }
    const double cut = N / 4.0;
    if (N1 < cut) return RegionTag::Omega1;
    if (N2 < cut) return RegionTag::Omega2;
    if (N3 < cut) return RegionTag::Omega3;
    return RegionTag::Omega4;
}

double normalized_symbol(const FrequencyTriple& triple, double N, double s,
                         RegionTag region) {
    const double a1 = mag(triple.xi1), a2 = mag(triple.xi2), a3 = mag(triple.xi3);
    switch (region) {
        case RegionTag::Omega2:
        case RegionTag::Omega3:
            if (a1 == 0.0 || a2 == 0.0) {
                throw std::invalid_argument("normalized_symbol: zero magnitude in divisor");
            }
            return N / (a1 * a2) * sigma(triple, N, s);
        case RegionTag::Omega4:
            if (a1 == 0.0 || a2 == 0.0 || a3 == 0.0) {
                throw std::invalid_argument("normalized_symbol: zero magnitude in divisor");
            }
            return N * N / (a1 * a2 * a3) * sigma(triple, N, s);
        case RegionTag::Omega1:
            throw std::invalid_argument("normalized_symbol: region must be Omega2..Omega4");
    }
    throw std::logic_error("normalized_symbol: bad region");
}

ScanResult scan_bounds(RegionTag region, double N, double s, long sample_count,
                       std::uint64_t rng_seed) {
    if (sample_count < 1000) throw std::invalid_argument("scan_bounds: need >= 1e3 samples");
    ScanResult out;
    if (region == RegionTag::Omega1) {
        // sigma vanishes identically: every |xi_i| < N/2 and |sum| < 3N/4.
        out.samples = sample_count;
        return out;
    }

    // Dyadic shell strata: "high" slots range over [N/4, 64N], "low"
    // slots over [N/256, N/8].
    std::vector<double> high, low;
    for (double v = N / 4.0; v <= 64.0 * N; v *= 2.0) high.push_back(v);
    for (double v = std::max(N / 256.0, 0.0078125); v <= N / 8.0; v *= 2.0) low.push_back(v);

    std::vector<std::array<double, 3>> strata;
    if (region == RegionTag::Omega2) {
        for (double n1 : high)
            for (std::size_t i = 0; i < low.size(); ++i)
                for (std::size_t j = 0; j <= i; ++j) strata.push_back({n1, low[i], low[j]});
    } else if (region == RegionTag::Omega3) {
        for (std::size_t i = 0; i < high.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                for (double n3 : low) strata.push_back({high[i], high[j], n3});
    } else {
        for (std::size_t i = 0; i < high.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                for (std::size_t k = 0; k <= j; ++k)
                    strata.push_back({high[i], high[j], high[k]});
    }

    Rng rng(rng_seed);
    const double two_pi = 2.0 * std::acos(-1.0);
    auto draw = [&](double Ni) -> Vec2 {
        const double r = Ni * (1.0 + rng.uniform() * (1.0 - 1e-12));
        const double th = two_pi * rng.uniform();
        return {r * std::cos(th), r * std::sin(th)};
    };

    for (long k = 0; k < sample_count; ++k) {
        const auto& st = strata[static_cast<std::size_t>(k) % strata.size()];
        FrequencyTriple t;
        t.N1 = st[0];
        t.N2 = st[1];
        t.N3 = st[2];
        t.xi1 = draw(t.N1);
        t.xi2 = draw(t.N2);
        t.xi3 = draw(t.N3);
        const double v = std::abs(normalized_symbol(t, N, s, region));
        if (v > out.sup_abs) {
            out.sup_abs = v;
            out.argmax = t;
        }
        ++out.samples;
    }
    return out;
}

}  // namespace nlslab
