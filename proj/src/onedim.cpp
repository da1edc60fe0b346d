#include "nlslab/onedim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlslab/fft.hpp"

namespace nlslab::onedim {

Grid1D::Grid1D(int n_, double box_length_) : n(n_), box_length(box_length_) {
    if (n < 8 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("Grid1D: n must be a power of two, n >= 8");
    }
    if (!(box_length > 0.0)) throw std::invalid_argument("Grid1D: box_length > 0");
}

Field1D strang_step(const Field1D& u0, double dt, bool dealias) {
    Field1D u = u0;
    auto half_phase = [dt](Field1D& f) {
        for (cplx& z : f.values) {
            const double phase = -std::norm(z) * dt * 0.5;
            z *= cplx{std::cos(phase), std::sin(phase)};
        }
    };
    half_phase(u);
    raw_dft_1d(u.grid.n, u.values.data(), -1);
    const double two_pi = 2.0 * std::numbers::pi;
    const double cut = u.grid.n / 3.0;
    for (int i = 0; i < u.grid.n; ++i) {
        if (dealias && std::abs(u.grid.freq_index(i)) > cut) {
            u.values[i] = cplx{0.0, 0.0};
            continue;
        }
        const double k = two_pi * u.grid.freq(i);
        const double phase = -k * k * dt;
        u.values[i] *= cplx{std::cos(phase), std::sin(phase)} / double(u.grid.n);
    }
    raw_dft_1d(u.grid.n, u.values.data(), 1);
    half_phase(u);
    return u;
}

Trajectory1D evolve(const Field1D& u0, double dt, double t_end, int snapshot_stride,
                    bool dealias) {
    if (!(dt > 0.0) || !(t_end >= dt) || snapshot_stride < 1) {
        throw std::invalid_argument("onedim::evolve: bad configuration");
    }
    const long nsteps = std::lround(t_end / dt);
    Trajectory1D traj;
    Field1D u = u0;
    traj.times.push_back(0.0);
    traj.fields.push_back(u);
    for (long k = 1; k <= nsteps; ++k) {
        u = strang_step(u, dt, dealias);
        if (k % snapshot_stride == 0 || k == nsteps) {
            traj.times.push_back(k * dt);
            traj.fields.push_back(u);
        }
    }
    return traj;
}

double mass(const Field1D& u) {
    double acc = 0.0;
    for (const cplx& z : u.values) acc += std::norm(z);
    return acc * u.grid.spacing();
}

double lebesgue_norm(const Field1D& u, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (const cplx& z : u.values) m = std::max(m, std::abs(z));
        return m;
    }
    double acc = 0.0;
    for (const cplx& z : u.values) acc += std::pow(std::abs(z), r);
    return std::pow(acc * u.grid.spacing(), 1.0 / r);
}

double h1_seminorm(const Field1D& u) {
    std::vector<cplx> hat = u.values;
    raw_dft_1d(u.grid.n, hat.data(), -1);
    const double dx = u.grid.spacing();
    const double two_pi = 2.0 * std::numbers::pi;
    double acc = 0.0;
    for (int i = 0; i < u.grid.n; ++i) {
        const double k = two_pi * u.grid.freq(i);
        acc += k * k * std::norm(hat[i] * dx);
    }
    return std::sqrt(acc / u.grid.box_length);
}

}  // namespace nlslab::onedim
