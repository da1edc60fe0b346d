#include "nlslab/propagator.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/functionals.hpp"

namespace nlslab {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("SolverConfig: t_end must be >= dt");
    if (snapshot_stride < 1) throw std::invalid_argument("SolverConfig: stride must be >= 1");
    if (grid.n == 0) throw std::invalid_argument("SolverConfig: grid not set");
}

void ScalingParams::validate() const {
    if (!(N >= 1.0)) throw std::invalid_argument("ScalingParams: N must be >= 1");
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("ScalingParams: s in (0,1)");
    if (!(lambda > 0.0)) throw std::invalid_argument("ScalingParams: lambda > 0");
    if (!(mu0 > 0.0)) throw std::invalid_argument("ScalingParams: mu0 > 0");
}

namespace {

void nonlinear_half_step(Field& u, double dt) {
    for (cplx& z : u.values) {
        const double phase = -std::norm(z) * dt * 0.5;
        z *= cplx{std::cos(phase), std::sin(phase)};
    }
    if (!u.all_finite()) {
        throw std::runtime_error("strang_step: non-finite value in nonlinear phase");
    }
}

// Linear step exp(-i (2 pi |xi|)^2 dt) in place on a spectrum, with
// optional 2/3 truncation folded in.
void linear_step(Spectrum& s, double dt, bool dealias) {
    const Grid2D& gr = s.grid;
    const double cut = gr.n / 3.0;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < gr.n; ++iy) {
        const double fy = gr.freq(iy);
        const int jy = std::abs(gr.freq_index(iy));
        for (int ix = 0; ix < gr.n; ++ix) {
            const int jx = std::abs(gr.freq_index(ix));
            if (dealias && (jx > cut || jy > cut)) {
                s.at(ix, iy) = cplx{0.0, 0.0};
                continue;
            }
            const double fx = gr.freq(ix);
            const double k2 = two_pi * two_pi * (fx * fx + fy * fy);
            const double phase = -k2 * dt;
            s.at(ix, iy) *= cplx{std::cos(phase), std::sin(phase)};
        }
    }
}

}  // namespace

Field strang_step(const Field& field, double dt, bool dealias) {
    Field u = field;
    if (dt == 0.0) return u;
    nonlinear_half_step(u, dt);
    Spectrum s = transform_forward(u);
    linear_step(s, dt, dealias);
    u = transform_inverse(s);
    nonlinear_half_step(u, dt);
    if (dealias) u = dealias_23(u);
    return u;
}

double boundary_mass_fraction(const Field& u) {
    const Grid2D& gr = u.grid;
    const double margin = gr.box_length / 8.0;
    double total = 0.0, edge = 0.0;
    for (int iy = 0; iy < gr.n; ++iy) {
        const double y = gr.coord(iy);
        const double dy = std::min(y, gr.box_length - y);
        for (int ix = 0; ix < gr.n; ++ix) {
            const double x = gr.coord(ix);
            const double dxb = std::min(x, gr.box_length - x);
            const double p = std::norm(u.at(ix, iy));
            total += p;
            if (std::min(dxb, dy) < margin) edge += p;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

Trajectory evolve(const SolverConfig& config, const Field& u0) {
    config.validate();
    if (!(u0.grid == config.grid)) throw std::invalid_argument("evolve: grid mismatch");
    if (!u0.all_finite()) throw std::invalid_argument("evolve: non-finite initial data");

    const long nsteps = std::lround(config.t_end / config.dt);
    if (std::abs(nsteps * config.dt - config.t_end) > 1e-9 * std::max(1.0, config.t_end)) {
        throw std::invalid_argument("evolve: t_end must be an integer number of steps");
    }

    auto check_resolution = [&](const Field& u, long step) {
        const double frac = high_band_mass_fraction(transform_forward(u));
        if (frac > 1e-10) {
            throw SpectralBlockingError("spectral blocking at step " + std::to_string(step) +
                                        ": high-band mass fraction " + std::to_string(frac));
        }
    };

    Trajectory traj;
    traj.config = config;
    check_resolution(u0, 0);

    Field u = u0;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.fields.push_back(u);
        if (config.boundary_monitor) {
            traj.max_boundary_mass_fraction =
                std::max(traj.max_boundary_mass_fraction, boundary_mass_fraction(u));
        }
    };
    record(0.0);

    for (long k = 1; k <= nsteps; ++k) {
        u = strang_step(u, config.dt, config.dealias);
        if (k % config.snapshot_stride == 0 || k == nsteps) {
            if (!config.dealias) check_resolution(u, k);
            record(k * config.dt);
        }
    }
    return traj;
}

Field rescale(const Field& u, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rescale: lambda must be positive");
    Field out(Grid2D(u.grid.n, u.grid.box_length * lambda));
    const double inv = 1.0 / lambda;
    for (std::size_t i = 0; i < u.values.size(); ++i) out.values[i] = u.values[i] * inv;
    return out;
}

double lambda_for(double N, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("lambda_for: s in (0,1)");
    return std::pow(N, (1.0 - s) / s);
}

double calibrate_lambda(const Field& u0, double N, double s) {
    const double center = std::log(lambda_for(N, s));
    // Bracket in log space around the balancing value; E(I u0^lambda) is
    // decreasing in lambda.
    double lo = center - 6.0 * std::numbers::ln2;  // lambda_for / 64
    double hi = center + 6.0 * std::numbers::ln2;
    auto e_at = [&](double loglam) {
        return modified_energy(rescale(u0, std::exp(loglam)), N, s);
    };
    double elo = e_at(lo), ehi = e_at(hi);
    int expand = 0;
    while (elo < 1.0 && expand < 8) {  // widen until the bracket straddles [1/2, 1]
        lo -= 6.0 * std::numbers::ln2;
        elo = e_at(lo);
        ++expand;
    }
    while (ehi > 0.5 && expand < 16) {
        hi += 6.0 * std::numbers::ln2;
        ehi = e_at(hi);
        ++expand;
    }
    if (!(elo >= 1.0 && ehi <= 0.5)) {
        throw std::runtime_error("calibrate_lambda: data not calibratable");
    }
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e = e_at(mid);
        if (e >= 0.5 && e <= 1.0) return std::exp(mid);
        if (e > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw std::runtime_error("calibrate_lambda: bisection failed in 64 iterations");
}

}  // namespace nlslab
