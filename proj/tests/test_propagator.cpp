#include <cmath>
#include <numbers>

#include <doctest.h>

#include "nlslab/experiments.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/propagator.hpp"
#include "nlslab/rng.hpp"
#include "nlslab/spectral.hpp"

using namespace nlslab;

namespace {

Field plane_wave(const Grid2D& g, int kx, int ky, double A) {
    Field u(g);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            const double ph =
                two_pi * (kx * g.coord(ix) + ky * g.coord(iy)) / g.box_length;
            u.at(ix, iy) = A * cplx{std::cos(ph), std::sin(ph)};
        }
    }
    return u;
}

}  // namespace

TEST_CASE("Strang step is exact on a plane wave") {
    const Grid2D g(32, 1.0);
    const double A = 0.8, dt = 2e-3;
    const Field u0 = plane_wave(g, 2, -3, A);
    const Field u1 = strang_step(u0, dt);
    const double two_pi = 2.0 * std::numbers::pi;
    const double omega = two_pi * two_pi * 13.0 + A * A;
    const cplx phase{std::cos(-omega * dt), std::sin(-omega * dt)};
    for (std::size_t i = 0; i < u0.values.size(); ++i) {
        CHECK(std::abs(u1.values[i] - u0.values[i] * phase) <= 1e-13);
    }
}

TEST_CASE("mass is conserved to roundoff along the flow") {
    const Grid2D g(64, 16.0);
    const Field u0 = gaussian_data(g, 1.0, 1.0, {8.0, 8.0}, {0.0, 0.0});
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.grid = g;
    cfg.snapshot_stride = 25;
    const Trajectory traj = evolve(cfg, u0);
    const double m0 = mass(traj.fields.front());
    for (const Field& f : traj.fields) {
        CHECK(std::abs(mass(f) - m0) / m0 <= 1e-13);
    }
}

TEST_CASE("the splitting is time-reversible on band-limited data") {
    const Grid2D g(64, 8.0);
    const Field u0 = dealias_23(gaussian_data(g, 1.0, 1.0, {4.0, 4.0}, {0.0, 0.0}));
    Field u = u0;
    const double dt = 1e-3;
    for (int k = 0; k < 10; ++k) u = strang_step(u, dt);
    for (int k = 0; k < 10; ++k) u = strang_step(u, -dt);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(std::abs(u.values[i] - u0.values[i]) <= 1e-10);
    }
}

TEST_CASE("energy drift is second order in dt") {
    const Grid2D g(64, 16.0);
    const Field u0 = gaussian_data(g, 1.0, 1.0, {8.0, 8.0}, {0.0, 0.0});
    auto drift = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.2;
        cfg.grid = g;
        cfg.snapshot_stride = 10;
        const Trajectory traj = evolve(cfg, u0);
        const double e0 = energy(traj.fields.front());
        double d = 0.0;
        for (const Field& f : traj.fields) d = std::max(d, std::abs(energy(f) - e0));
        return d;
    };
    const double ratio = drift(2e-3) / drift(1e-3);
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("evolve validates its configuration") {
    const Grid2D g(16, 1.0);
    Field u0(g);
    u0.at(0, 0) = cplx{1.0, 0.0};
    SolverConfig cfg;
    cfg.grid = g;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0005e-3 * 7.0;  // not an integer number of steps
    CHECK_THROWS(evolve(cfg, u0));
    cfg.t_end = -1.0;
    CHECK_THROWS(evolve(cfg, u0));
}

TEST_CASE("the resolution guard rejects under-resolved data") {
    const Grid2D g(32, 1.0);
    Spectrum s(g);
    s.at(1, 0) = cplx{1.0, 0.0};
    s.at(15, 15) = cplx{0.5, 0.0};  // top-band content
    const Field bad = transform_inverse(s);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1e-2;
    cfg.grid = g;
    CHECK_THROWS_AS(evolve(cfg, bad), SpectralBlockingError);
}

TEST_CASE("rescale preserves the L2 norm and scales the box") {
    const Grid2D g(64, 2.0);
    Rng rng(21);
    Field u(g);
    for (cplx& z : u.values) z = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Field v = rescale(u, 3.5);
    CHECK(v.grid.box_length == doctest::Approx(7.0));
    CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-13));
}

TEST_CASE("lambda_for and calibrate_lambda land the modified energy in [1/2, 1]") {
    CHECK(lambda_for(8.0, 0.5) == doctest::Approx(8.0).epsilon(1e-14));
    const Grid2D g(64, 0.25);
    const Field u0 = powerlaw_data(g, 1.45, 20, 1.0, 404, 5.0);
    const double N = 8.0, s = 0.45;
    const double lambda = calibrate_lambda(u0, N, s);
    const double e = modified_energy(rescale(u0, lambda), N, s);
    CHECK(e >= 0.5);
    CHECK(e <= 1.0);
}

TEST_CASE("boundary mass fraction is tiny for a centered bump") {
    const Grid2D g(64, 16.0);
    const Field u = gaussian_data(g, 1.0, 1.0, {8.0, 8.0}, {0.0, 0.0});
    CHECK(boundary_mass_fraction(u) < 1e-8);
}
