#include "nlslab/functionals.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nlslab/strichartz.hpp"

namespace nlslab {

namespace {

double quad(const Grid2D& g) {
    const double dx = g.spacing();
    return dx * dx;
}

std::array<Field, 2> gradient(const Field& u) {
    Spectrum s = transform_forward(u);
    Spectrum sx = s, sy = std::move(s);
    spectral_derivative_inplace(sx, 0);
    spectral_derivative_inplace(sy, 1);
    return {transform_inverse(sx), transform_inverse(sy)};
}

Field cubic(const Field& u, bool dealias) {
    Field out(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        out.values[i] = std::norm(u.values[i]) * u.values[i];
    }
    return dealias ? dealias_23(out) : out;
}

double grad_l2_norm(const Field& u) {
    Spectrum s = transform_forward(u);
    const Grid2D& g = s.grid;
    const double two_pi = 2.0 * std::numbers::pi;
    double acc = 0.0;
    for (int iy = 0; iy < g.n; ++iy) {
        const double fy = g.freq(iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double fx = g.freq(ix);
            acc += two_pi * two_pi * (fx * fx + fy * fy) * std::norm(s.at(ix, iy));
        }
    }
    return std::sqrt(acc / (g.box_length * g.box_length));
}

// Minimum-image displacement component for sample index i.
double min_image(const Grid2D& g, int i) {
    return (i <= g.n / 2 ? i : i - g.n) * g.spacing();
}

// int int K(x1 - x2) . P(x1) rho(x2) dx1 dx2 with K the gradient kernel
// f'(|d|) d_hat sampled with minimum image, via circular FFT convolution.
double pair_integral(const WeightSpec& w, const VectorField& P,
                     const std::vector<double>& rho) {
    const Grid2D& g = P.grid;
    const std::size_t sz = g.size();
    std::vector<cplx> kx(sz), ky(sz), rh(sz);
    for (int iy = 0; iy < g.n; ++iy) {
        const double dy = min_image(g, iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double dx = min_image(g, ix);
            const double r = std::hypot(dx, dy);
            const std::size_t id = static_cast<std::size_t>(iy) * g.n + ix;
            if (r > 0.0) {
                const double fp_over_r = w.fp(r) / r;
                kx[id] = fp_over_r * dx;
                ky[id] = fp_over_r * dy;
            }
            rh[id] = rho[id];
        }
    }
    raw_dft_2d(g.n, kx.data(), -1);
    raw_dft_2d(g.n, ky.data(), -1);
    raw_dft_2d(g.n, rh.data(), -1);
    for (std::size_t i = 0; i < sz; ++i) {
        kx[i] *= rh[i];
        ky[i] *= rh[i];
    }
    raw_dft_2d(g.n, kx.data(), 1);
    raw_dft_2d(g.n, ky.data(), 1);
    const double scale = quad(g) / sz;  // convolution measure / DFT normalization
    double acc = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
        acc += P.x[i] * kx[i].real() + P.y[i] * ky[i].real();
    }
    return acc * scale * quad(g);
}

}  // namespace

double mass(const Field& u) {
    double acc = 0.0;
    for (const cplx& z : u.values) acc += std::norm(z);
    return acc * quad(u.grid);
}

std::array<double, 2> momentum(const Field& u) {
    auto [ux, uy] = gradient(u);
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const cplx cu = std::conj(u.values[i]);
        px += std::imag(cu * ux.values[i]);
        py += std::imag(cu * uy.values[i]);
    }
    const double m = quad(u.grid);
    return {px * m, py * m};
}

double energy(const Field& u) {
    const double g2 = grad_l2_norm(u);
    double quartic = 0.0;
    for (const cplx& z : u.values) quartic += std::norm(z) * std::norm(z);
    return 0.5 * g2 * g2 + 0.25 * quartic * quad(u.grid);
}

double modified_energy(const Field& u, double N, double s) {
    return energy(apply_multiplier(u, MultiplierSpec::i_multiplier(N, s)));
}

VectorField momentum_bracket(const Field& f, const Field& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("momentum_bracket: grid mismatch");
    auto [gx, gy] = gradient(g);
    auto [fx, fy] = gradient(f);
    VectorField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        out.x[i] = std::real(f.values[i] * std::conj(gx.values[i]) -
                             g.values[i] * std::conj(fx.values[i]));
        out.y[i] = std::real(f.values[i] * std::conj(gy.values[i]) -
                             g.values[i] * std::conj(fy.values[i]));
    }
    return out;
}

VectorField momentum_density(const Field& u) {
    auto [ux, uy] = gradient(u);
    VectorField out(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const cplx cu = std::conj(u.values[i]);
        out.x[i] = 2.0 * std::imag(cu * ux.values[i]);
        out.y[i] = 2.0 * std::imag(cu * uy.values[i]);
    }
    return out;
}

MatrixField momentum_current(const Field& u) {
    auto [ux, uy] = gradient(u);
    Field density(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        density.values[i] = std::norm(u.values[i]);
    }
    Field dxx = spectral_derivative(spectral_derivative(density, 0), 0);
    Field dxy = spectral_derivative(spectral_derivative(density, 0), 1);
    Field dyy = spectral_derivative(spectral_derivative(density, 1), 1);
    MatrixField out(u.grid);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        out.xx[i] = -dxx.values[i].real() + 4.0 * std::real(std::conj(ux.values[i]) * ux.values[i]);
        out.xy[i] = -dxy.values[i].real() + 4.0 * std::real(std::conj(ux.values[i]) * uy.values[i]);
        out.yy[i] = -dyy.values[i].real() + 4.0 * std::real(std::conj(uy.values[i]) * uy.values[i]);
    }
    return out;
}

double local_momentum_identity_residual(const Trajectory& traj, std::size_t k) {
    if (k == 0 || k + 1 >= traj.size()) {
        throw std::invalid_argument("local_momentum_identity_residual: need interior snapshot");
    }
    const Field& u = traj.fields[k];
    const double dt2 = traj.times[k + 1] - traj.times[k - 1];

    VectorField t_prev = momentum_density(traj.fields[k - 1]);
    VectorField t_next = momentum_density(traj.fields[k + 1]);
    MatrixField L = momentum_current(u);
    VectorField bracket = momentum_bracket(cubic(u, traj.config.dealias), u);

    // div of each row of L, spectral.
    auto wrap = [&](const std::vector<double>& v) {
        Field f(u.grid);
        for (std::size_t i = 0; i < v.size(); ++i) f.values[i] = v[i];
        return f;
    };
    Field div_x = spectral_derivative(wrap(L.xx), 0);
    Field div_x2 = spectral_derivative(wrap(L.xy), 1);
    Field div_y = spectral_derivative(wrap(L.xy), 0);
    Field div_y2 = spectral_derivative(wrap(L.yy), 1);

    double acc = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double rx = (t_next.x[i] - t_prev.x[i]) / dt2 + div_x.values[i].real() +
                          div_x2.values[i].real() - 2.0 * bracket.x[i];
        const double ry = (t_next.y[i] - t_prev.y[i]) / dt2 + div_y.values[i].real() +
                          div_y2.values[i].real() - 2.0 * bracket.y[i];
        acc += rx * rx + ry * ry;
    }
    return std::sqrt(acc * quad(u.grid));
}

WeightFields make_weight_fields(const Grid2D& grid, const RadialWeight& w,
                                std::array<double, 2> center) {
    WeightFields out{VectorField(grid), MatrixField(grid),
                     std::vector<double>(grid.size(), 0.0),
                     std::vector<double>(grid.size(), 0.0)};
    for (int iy = 0; iy < grid.n; ++iy) {
        const double dy = grid.coord(iy) - center[1];
        for (int ix = 0; ix < grid.n; ++ix) {
            const double dx = grid.coord(ix) - center[0];
            const double r = std::max(std::hypot(dx, dy), 1e-12);
            const std::size_t id = static_cast<std::size_t>(iy) * grid.n + ix;
            const double fp = w.fp(r), fpp = w.fpp(r);
            const double ex = dx / r, ey = dy / r;
            out.grad.x[id] = fp * ex;
            out.grad.y[id] = fp * ey;
            const double tang = fp / r;
            out.hess.xx[id] = fpp * ex * ex + tang * ey * ey;
            out.hess.xy[id] = (fpp - tang) * ex * ey;
            out.hess.yy[id] = fpp * ey * ey + tang * ex * ex;
            out.lap[id] = w.lap(r);
            out.bilap_regular[id] = w.bilap_regular(r);
        }
    }
    return out;
}

double morawetz_action(const Field& u, const VectorField& grad_a) {
    VectorField t0 = momentum_density(u);
    double acc = 0.0;
    for (std::size_t i = 0; i < t0.x.size(); ++i) {
        acc += grad_a.x[i] * t0.x[i] + grad_a.y[i] * t0.y[i];
    }
    return acc * quad(u.grid);
}

double morawetz_action(const Field& u, const RadialWeight& w, std::array<double, 2> center) {
    return morawetz_action(u, make_weight_fields(u.grid, w, center).grad);
}

VirialReport virial_residual(const Trajectory& traj, const RadialWeight& w,
                             std::array<double, 2> center, std::size_t k1, std::size_t k2) {
    if (w.has_delta) {
        throw std::invalid_argument(
            "virial_residual: delta-supported bilaplacian not usable on a single-field "
            "weight; use the interaction machinery");
    }
    if (k2 >= traj.size() || k1 >= k2) {
        throw std::invalid_argument("virial_residual: bad snapshot range");
    }
    const Grid2D& g = traj.fields[0].grid;
    WeightFields wf = make_weight_fields(g, w, center);

    VirialReport rep;
    rep.min_lap_term = std::numeric_limits<double>::infinity();
    rep.min_hess_term = std::numeric_limits<double>::infinity();

    std::vector<double> rhs(k2 - k1 + 1);
    for (std::size_t k = k1; k <= k2; ++k) {
        const Field& u = traj.fields[k];
        auto [ux, uy] = gradient(u);
        double bilap_term = 0.0, lap_term = 0.0, hess_term = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double den = std::norm(u.values[i]);
            bilap_term += wf.bilap_regular[i] * den;
            lap_term += wf.lap[i] * 0.5 * den * den;  // G = |u|^4 / 2
            const cplx cx = ux.values[i], cy = uy.values[i];
            hess_term += wf.hess.xx[i] * std::norm(cx) +
                         2.0 * wf.hess.xy[i] * std::real(std::conj(cx) * cy) +
                         wf.hess.yy[i] * std::norm(cy);
        }
        const double m = quad(g);
        rhs[k - k1] = bilap_term * m + 2.0 * lap_term * m + 4.0 * hess_term * m;
        rep.min_lap_term = std::min(rep.min_lap_term, 2.0 * lap_term * m);
        rep.min_hess_term = std::min(rep.min_hess_term, 4.0 * hess_term * m);
    }
    double integral = 0.0;
    for (std::size_t k = k1; k < k2; ++k) {
        integral += 0.5 * (traj.times[k + 1] - traj.times[k]) * (rhs[k - k1] + rhs[k - k1 + 1]);
    }
    const double delta_m = morawetz_action(traj.fields[k2], wf.grad) -
                           morawetz_action(traj.fields[k1], wf.grad);
    rep.residual = std::abs(delta_m - integral);
    return rep;
}

VirialReport virial_positivity(const Trajectory& traj, const RadialWeight& w,
                               std::array<double, 2> center) {
    if (traj.size() == 0) throw std::invalid_argument("virial_positivity: empty trajectory");
    const Grid2D& g = traj.fields[0].grid;
    WeightFields wf = make_weight_fields(g, w, center);
    VirialReport rep;
    rep.min_lap_term = std::numeric_limits<double>::infinity();
    rep.min_hess_term = std::numeric_limits<double>::infinity();
    const double m = quad(g);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const Field& u = traj.fields[k];
        auto [ux, uy] = gradient(u);
        double lap_term = 0.0, hess_term = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double den = std::norm(u.values[i]);
            lap_term += wf.lap[i] * 0.5 * den * den;  // G = |u|^4 / 2
            const cplx cx = ux.values[i], cy = uy.values[i];
            hess_term += wf.hess.xx[i] * std::norm(cx) +
                         2.0 * wf.hess.xy[i] * std::real(std::conj(cx) * cy) +
                         wf.hess.yy[i] * std::norm(cy);
        }
        rep.min_lap_term = std::min(rep.min_lap_term, 2.0 * lap_term * m);
        rep.min_hess_term = std::min(rep.min_hess_term, 4.0 * hess_term * m);
    }
    return rep;
}

double interaction_action(const Field& u1, const Field& u2, const WeightSpec& weight) {
    if (!(u1.grid == u2.grid)) throw std::invalid_argument("interaction_action: grid mismatch");
    if (weight.M < 4.0 * u1.grid.spacing()) {
        throw std::invalid_argument("interaction_action: weight kernel not resolvable on grid");
    }
    auto density = [](const Field& u) {
        std::vector<double> d(u.values.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(u.values[i]);
        return d;
    };
    auto current = [](const Field& u) {
        VectorField j(u.grid);
        VectorField t0 = momentum_density(u);
        for (std::size_t i = 0; i < j.x.size(); ++i) {
            j.x[i] = 0.5 * t0.x[i];  // Im(conj(u) grad u)
            j.y[i] = 0.5 * t0.y[i];
        }
        return j;
    };
    return 2.0 * (pair_integral(weight, current(u1), density(u2)) +
                  pair_integral(weight, current(u2), density(u1)));
}

Field commutator(const Field& u, double N, double s, bool dealias) {
    const MultiplierSpec im = MultiplierSpec::i_multiplier(N, s);
    Field iu = apply_multiplier(u, im);
    Field lhs = apply_multiplier(cubic(u, dealias), im);
    Field rhs = cubic(iu, dealias);
    Field out(u.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = lhs.values[i] - rhs.values[i];
    }
    return out;
}

std::array<double, 2> commutator_norms(const Trajectory& traj, double N, double s) {
    std::vector<double> n0(traj.size()), n1(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        Field c = commutator(traj.fields[k], N, s);
        n0[k] = lebesgue_norm(c, 2.0);
        n1[k] = grad_l2_norm(c);
    }
    double c0 = 0.0, c1 = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        c0 += 0.5 * dt * (n0[k] + n0[k + 1]);
        c1 += 0.5 * dt * (n1[k] + n1[k + 1]);
    }
    return {c0, c1};
}

double error_term_density(const Field& u, double N, double s, const WeightSpec& weight) {
    const MultiplierSpec im = MultiplierSpec::i_multiplier(N, s);
    Field v = apply_multiplier(u, im);
    Field c = commutator(u, N, s);
    auto [vx, vy] = gradient(v);
    auto [cx, cy] = gradient(c);

    VectorField w_re(u.grid);
    std::vector<double> rho(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        // W = C grad(conj V) - grad(conj C) V, componentwise real part.
        w_re.x[i] = std::real(c.values[i] * std::conj(vx.values[i]) -
                              std::conj(cx.values[i]) * v.values[i]);
        w_re.y[i] = std::real(c.values[i] * std::conj(vy.values[i]) -
                              std::conj(cy.values[i]) * v.values[i]);
        rho[i] = std::norm(v.values[i]);
    }
    return 2.0 * pair_integral(weight, w_re, rho);
}

ErrorTermReport error_term(const Trajectory& traj, double N, double s,
                           const WeightSpec& weight) {
    std::vector<double> dens(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        dens[k] = error_term_density(traj.fields[k], N, s, weight);
    }
    ErrorTermReport rep;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        rep.value += 0.5 * (traj.times[k + 1] - traj.times[k]) * (dens[k] + dens[k + 1]);
    }
    auto [c0, c1] = commutator_norms(traj, N, s);
    const double z = z_norm(traj, N, s);
    rep.bound_surrogate = (c0 + c1) * z * z * z;
    return rep;
}

std::vector<DiagnosticsRecord> compute_diagnostics(
    const Trajectory& traj, double N, double s, const std::optional<WeightSpec>& weight) {
    const MultiplierSpec im = MultiplierSpec::i_multiplier(N, s);
    std::vector<DiagnosticsRecord> out;
    out.reserve(traj.size());
    double l4acc = 0.0, prev_l4 = 0.0;
    std::optional<RadialWeight> rw;
    std::array<double, 2> center{0.0, 0.0};
    if (weight) {
        rw = radial_weight(*weight);
        const Grid2D& g = traj.fields[0].grid;
        center = {g.box_length / 2.0 + g.spacing() / 2.0,
                  g.box_length / 2.0 + g.spacing() / 2.0};
    }
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const Field& u = traj.fields[k];
        Field iu = apply_multiplier(u, im);
        DiagnosticsRecord rec;
        rec.t = traj.times[k];
        rec.mass = mass(u);
        rec.energy = energy(u);
        rec.e_iu = energy(iu);
        auto p = momentum(u);
        rec.px = p[0];
        rec.py = p[1];
        const double l4 = std::pow(lebesgue_norm(iu, 4.0), 4.0);
        if (k > 0) l4acc += 0.5 * (traj.times[k] - traj.times[k - 1]) * (prev_l4 + l4);
        prev_l4 = l4;
        rec.l4acc = l4acc;
        Field c = commutator(u, N, s);
        rec.c0 = lebesgue_norm(c, 2.0);
        rec.c1 = grad_l2_norm(c);
        if (weight) {
            rec.ma = morawetz_action(u, *rw, center);
            rec.ma2 = interaction_action(u, u, *weight);
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace nlslab
