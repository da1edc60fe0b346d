#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "nlslab/fft.hpp"
#include "nlslab/rng.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;

namespace {

Field random_field(const Grid2D& g, std::uint64_t seed) {
    Rng rng(seed);
    Field f(g);
    for (cplx& z : f.values) z = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return f;
}

}  // namespace

TEST_CASE("forward transform matches the direct DFT definition on 8x8") {
    const Grid2D g(8, 2.0);
    const Field u = random_field(g, 11);
    const Spectrum s = transform_forward(u);
    const double dx2 = g.spacing() * g.spacing();
    const double two_pi = 2.0 * std::numbers::pi;
    for (int jy = -4; jy < 4; ++jy) {
        for (int jx = -4; jx < 4; ++jx) {
            cplx acc{0.0, 0.0};
            for (int iy = 0; iy < 8; ++iy) {
                for (int ix = 0; ix < 8; ++ix) {
                    const double ph = -two_pi * (jx * ix + jy * iy) / 8.0;
                    acc += u.at(ix, iy) * cplx{std::cos(ph), std::sin(ph)};
                }
            }
            acc *= dx2;
            const cplx got = s.at((jx + 8) % 8, (jy + 8) % 8);
            CHECK(std::abs(got - acc) <= 1e-12 * (1.0 + std::abs(acc)));
        }
    }
}

TEST_CASE("inverse transform round-trips") {
    const Grid2D g(32, 5.0);
    const Field u = random_field(g, 12);
    const Field back = transform_inverse(transform_forward(u));
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(std::abs(back.values[i] - u.values[i]) <= 1e-13);
    }
}

TEST_CASE("Plancherel identity holds in the library convention") {
    const Grid2D g(64, 3.0);
    const Field u = random_field(g, 13);
    const Spectrum s = transform_forward(u);
    double phys = 0.0, spec = 0.0;
    for (const cplx& z : u.values) phys += std::norm(z);
    phys *= g.spacing() * g.spacing();
    for (const cplx& c : s.coeffs) spec += std::norm(c);
    spec /= g.box_length * g.box_length;
    CHECK(phys == doctest::Approx(spec).epsilon(1e-13));
}

TEST_CASE("spectral derivative is exact on a plane wave") {
    const Grid2D g(32, 2.0);
    Field u(g);
    const int kx = 3, ky = -2;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            const double ph = two_pi * (kx * g.coord(ix) + ky * g.coord(iy)) / g.box_length;
            u.at(ix, iy) = cplx{std::cos(ph), std::sin(ph)};
        }
    }
    const Field dy = spectral_derivative(u, 1);
    const cplx factor = cplx{0.0, two_pi * ky / g.box_length};
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(std::abs(dy.values[i] - factor * u.values[i]) <= 1e-11);
    }
}

TEST_CASE("homogeneous Sobolev norm of a plane wave is A |k|^s") {
    const Grid2D g(64, 1.0);
    const double A = 1.3;
    Field u(g);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            const double ph = two_pi * (4.0 * g.coord(ix) + 3.0 * g.coord(iy));
            u.at(ix, iy) = A * cplx{std::cos(ph), std::sin(ph)};
        }
    }
    const double rho = 5.0;  // |(4,3)| on the unit box
    for (double s0 : {0.0, 0.45, 1.0}) {
        CHECK(sobolev_norm(u, s0, true) ==
              doctest::Approx(A * std::pow(rho, s0)).epsilon(1e-12));
    }
}

TEST_CASE("I-multiplier profile: flat head, smooth blend, power tail") {
    const double N = 8.0, s = 0.45;
    CHECK(i_multiplier_value(0.0, N, s) == 1.0);
    CHECK(i_multiplier_value(N, N, s) == 1.0);
    CHECK(i_multiplier_value(2.0 * N, N, s) ==
          doctest::Approx(std::pow(2.0, s - 1.0)).epsilon(1e-14));
    CHECK(i_multiplier_value(32.0 * N, N, s) ==
          doctest::Approx(std::pow(32.0, s - 1.0)).epsilon(1e-14));
    double prev = 1.0;
    for (double rho = N; rho <= 4.0 * N; rho += N / 64.0) {
        const double v = i_multiplier_value(rho, N, s);
        CHECK(v <= prev + 1e-14);  // monotone nonincreasing
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK_THROWS(MultiplierSpec::i_multiplier(0.0, 0.45));
    CHECK_THROWS(MultiplierSpec::i_multiplier(8.0, 1.5));
}

TEST_CASE("Littlewood-Paley low + high reconstructs and bands telescope") {
    const Grid2D g(64, 2.0);
    const Field u = random_field(g, 14);
    const Field lo = littlewood_paley(u, 4.0, LpMode::Low);
    const Field hi = littlewood_paley(u, 4.0, LpMode::High);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(std::abs(lo.values[i] + hi.values[i] - u.values[i]) <= 1e-12);
    }
    // band(M) = low(M) - low(M/2)
    const Field band = littlewood_paley(u, 4.0, LpMode::Band);
    const Field lo2 = littlewood_paley(u, 2.0, LpMode::Low);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(std::abs(band.values[i] - (lo.values[i] - lo2.values[i])) <= 1e-12);
    }
    CHECK_THROWS(littlewood_paley(u, 1e6, LpMode::Low));
}

TEST_CASE("2/3 dealiasing zeroes exactly the top band") {
    const Grid2D g(32, 1.0);
    Spectrum s(g);
    for (cplx& c : s.coeffs) c = cplx{1.0, 0.0};
    dealias_23(s);
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            const bool kept = std::abs(g.freq_index(ix)) <= 10 && std::abs(g.freq_index(iy)) <= 10;
            CHECK(s.at(ix, iy) == (kept ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
        }
    }
}

TEST_CASE("lebesgue norms: constants and the sup norm") {
    const Grid2D g(16, 3.0);
    Field u(g);
    for (cplx& z : u.values) z = cplx{2.0, 0.0};
    CHECK(lebesgue_norm(u, 2.0) == doctest::Approx(2.0 * 3.0).epsilon(1e-14));
    CHECK(lebesgue_norm(u, 4.0) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
    u.at(3, 5) = cplx{7.0, 0.0};
    CHECK(lebesgue_norm(u, std::numeric_limits<double>::infinity()) == 7.0);
    CHECK_THROWS(lebesgue_norm(u, 0.5));
}

TEST_CASE("homogeneous negative order requires a vanishing zero mode") {
    const Grid2D g(16, 1.0);
    Field u(g);
    for (cplx& z : u.values) z = cplx{1.0, 0.0};
    CHECK_THROWS(apply_multiplier(u, MultiplierSpec::frac_deriv(-0.5, true)));
    CHECK_THROWS(sobolev_norm(u, -0.5, true));
}
