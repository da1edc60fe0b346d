#include <cmath>
#include <numbers>

#include <doctest.h>

#include "nlslab/experiments.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/rng.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/weights.hpp"

using namespace nlslab;

namespace {

const double kPi = std::numbers::pi;

Field random_field(const Grid2D& g, std::uint64_t seed) {
    Rng rng(seed);
    Field f(g);
    for (cplx& z : f.values) z = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return f;
}

double min_image_component(const Grid2D& g, int idx) {
    return (idx <= g.n / 2 ? idx : idx - g.n) * g.spacing();
}

double brute_pair(const WeightSpec& w, const VectorField& P, const std::vector<double>& rho) {
    const Grid2D& g = P.grid;
    const int n = g.n;
    double acc = 0.0;
    for (int y1 = 0; y1 < n; ++y1) {
        for (int x1 = 0; x1 < n; ++x1) {
            const std::size_t i1 = static_cast<std::size_t>(y1) * n + x1;
            for (int y2 = 0; y2 < n; ++y2) {
                const double dy = min_image_component(g, ((y1 - y2) % n + n) % n);
                for (int x2 = 0; x2 < n; ++x2) {
                    const double dx = min_image_component(g, ((x1 - x2) % n + n) % n);
                    const double r = std::hypot(dx, dy);
                    if (r == 0.0) continue;
                    acc += (w.fp(r) / r) * (dx * P.x[i1] + dy * P.y[i1]) *
                           rho[static_cast<std::size_t>(y2) * n + x2];
                }
            }
        }
    }
    const double q = g.spacing() * g.spacing();
    return acc * q * q;
}

}  // namespace

TEST_CASE("Gaussian closed forms: mass, energy, momentum") {
    const Grid2D g(128, 16.0);
    const double A = 1.3, w = 1.0;
    const Field u = gaussian_data(g, A, w, {8.0, 8.0}, {0.0, 0.0});
    CHECK(mass(u) == doctest::Approx(A * A * kPi * w * w).epsilon(1e-11));
    const double e_expected = kPi * A * A / 2.0 + kPi * A * A * A * A * w * w / 8.0;
    CHECK(energy(u) == doctest::Approx(e_expected).epsilon(1e-10));
    const auto p = momentum(u);
    CHECK(std::abs(p[0]) <= 1e-12);
    CHECK(std::abs(p[1]) <= 1e-12);

    const Field um = gaussian_data(g, A, w, {8.0, 8.0}, {0.25, 0.0});
    const auto pm = momentum(um);
    CHECK(pm[0] == doctest::Approx(2.0 * kPi * 0.25 * mass(um)).epsilon(1e-10));
    CHECK(std::abs(pm[1]) <= 1e-10);
}

TEST_CASE("modified energy reduces to energy below the cutoff") {
    const Grid2D g(64, 1.0);
    Spectrum s(g);
    Rng rng(31);
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            if (std::hypot(g.freq(ix), g.freq(iy)) > 5.0) continue;
            s.at(ix, iy) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
    }
    const Field u = transform_inverse(s);
    CHECK(modified_energy(u, 6.0, 0.45) == doctest::Approx(energy(u)).epsilon(1e-12));
}

TEST_CASE("Morawetz action vanishes for real data") {
    const Grid2D g(64, 8.0);
    const Field u = gaussian_data(g, 1.0, 1.0, {4.0, 4.0}, {0.0, 0.0});
    const RadialWeight w = radial_weight(build_weight(2.0));
    const double ma = morawetz_action(u, w, {4.0 + g.spacing() / 2.0, 4.0 + g.spacing() / 2.0});
    CHECK(std::abs(ma) <= 1e-10);
}

TEST_CASE("virial positivity holds pointwise for convex weights") {
    const Grid2D g(64, 16.0);
    const Field u0 = gaussian_data(g, 1.0, 1.5, {8.0, 8.0}, {0.1, 0.0});
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.grid = g;
    cfg.snapshot_stride = 25;
    const Trajectory traj = evolve(cfg, u0);
    const RadialWeight w = radial_weight(build_weight(2.0));
    const VirialReport rep =
        virial_positivity(traj, w, {8.0 + g.spacing() / 2.0, 8.0 + g.spacing() / 2.0});
    CHECK(rep.min_lap_term >= -1e-10);
    CHECK(rep.min_hess_term >= -1e-10);
}

TEST_CASE("virial_residual refuses delta-carrying weights") {
    const Grid2D g(32, 8.0);
    const Field u0 = gaussian_data(g, 0.5, 1.0, {4.0, 4.0}, {0.0, 0.0});
    Trajectory traj;
    traj.config.grid = g;
    traj.config.dt = 1e-3;
    traj.times = {0.0, 1e-3};
    traj.fields = {u0, u0};
    const RadialWeight w = radial_weight(build_weight(2.0));
    CHECK(w.has_delta);
    CHECK_THROWS(virial_residual(traj, w, {4.0, 4.0}, 0, 1));
}

TEST_CASE("interaction action matches the brute-force quadrature") {
    const Grid2D g(16, 4.0);
    const WeightSpec w = build_weight(1.0);
    const Field u1 = random_field(g, 41);
    const Field u2 = random_field(g, 42);
    auto current = [](const Field& u) {
        VectorField t0 = momentum_density(u);
        for (std::size_t i = 0; i < t0.x.size(); ++i) {
            t0.x[i] *= 0.5;
            t0.y[i] *= 0.5;
        }
        return t0;
    };
    auto density = [](const Field& u) {
        std::vector<double> d(u.values.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(u.values[i]);
        return d;
    };
    const double brute = 2.0 * (brute_pair(w, current(u1), density(u2)) +
                                brute_pair(w, current(u2), density(u1)));
    const double fast = interaction_action(u1, u2, w);
    CHECK(fast == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("interaction action rejects unresolvable kernels") {
    const Grid2D g(16, 4.0);
    const Field u = random_field(g, 43);
    CHECK_THROWS(interaction_action(u, u, build_weight(0.5)));  // M < 4 dx
}

TEST_CASE("commutator vanishes for spectrum inside |xi| < N/3") {
    const Grid2D g(32, 1.0);
    Rng rng(51);
    Spectrum s(g);
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            if (std::hypot(g.freq(ix), g.freq(iy)) > 3.0) continue;
            s.at(ix, iy) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
    }
    Field u = transform_inverse(s);
    const double m = std::sqrt(mass(u));
    for (cplx& z : u.values) z /= m;
    CHECK(lebesgue_norm(commutator(u, 30.0, 0.45), 2.0) <= 1e-12);
}

TEST_CASE("error-term density vanishes with the commutator") {
    const Grid2D g(32, 4.0);
    Spectrum s(g);
    Rng rng(52);
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            if (std::hypot(g.freq(ix), g.freq(iy)) > 0.75) continue;
            s.at(ix, iy) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
    }
    const Field u = transform_inverse(s);
    CHECK(std::abs(error_term_density(u, 8.0, 0.45, build_weight(1.0))) <= 1e-10);
}

TEST_CASE("local momentum identity residual shrinks under dt refinement") {
    const Grid2D g(64, 16.0);
    const Field u0 = gaussian_data(g, 1.0, 1.0, {8.0, 8.0}, {0.25, 0.0});
    auto residual = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.04;
        cfg.grid = g;
        cfg.snapshot_stride = 1;
        const Trajectory traj = evolve(cfg, u0);
        return local_momentum_identity_residual(traj, traj.size() / 2);
    };
    CHECK(residual(4e-3) / residual(2e-3) >= 3.0);
}
