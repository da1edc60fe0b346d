#include "nlslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlslab {

namespace {
double g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = g(t);
    return a / (a + g(1.0 - t));
}

double bump_eta(double rho) {
    rho = std::abs(rho);
    if (rho <= 1.0) return 1.0;
    if (rho >= 2.0) return 0.0;
    return 1.0 - smooth_step(rho - 1.0);
}

double i_multiplier_value(double rho, double N, double s) {
    rho = std::abs(rho);
    if (rho <= N) return 1.0;
    const double decay = std::pow(rho / N, s - 1.0);
    if (rho >= 2.0 * N) return decay;
    const double t = smooth_step((rho - N) / N);
    return (1.0 - t) + t * decay;
}

MultiplierSpec MultiplierSpec::i_multiplier(double N, double s) {
    if (!(N > 0.0) || !(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("i_multiplier: need N > 0 and s in (0,1)");
    }
    MultiplierSpec m;
    m.kind = MultiplierKind::IMultiplier;
    m.N = N;
    m.s = s;
    m.eval = [N, s](double rho) { return i_multiplier_value(rho, N, s); };
    return m;
}

MultiplierSpec MultiplierSpec::lp_low(double M) {
    if (!(M > 0.0)) throw std::invalid_argument("lp_low: M must be positive");
    MultiplierSpec m;
    m.kind = MultiplierKind::LpLow;
    m.M = M;
    m.eval = [M](double rho) { return bump_eta(rho / M); };
    return m;
}

MultiplierSpec MultiplierSpec::lp_band(double M) {
    if (!(M > 0.0)) throw std::invalid_argument("lp_band: M must be positive");
    MultiplierSpec m;
    m.kind = MultiplierKind::LpBand;
    m.M = M;
    m.eval = [M](double rho) { return bump_eta(rho / M) - bump_eta(2.0 * rho / M); };
    return m;
}

MultiplierSpec MultiplierSpec::lp_high(double M) {
    if (!(M > 0.0)) throw std::invalid_argument("lp_high: M must be positive");
    MultiplierSpec m;
    m.kind = MultiplierKind::LpHigh;
    m.M = M;
    m.eval = [M](double rho) { return 1.0 - bump_eta(rho / M); };
    return m;
}

MultiplierSpec MultiplierSpec::frac_deriv(double alpha, bool homogeneous) {
    MultiplierSpec m;
    m.kind = MultiplierKind::FracDeriv;
    m.alpha = alpha;
    m.homogeneous = homogeneous;
    if (homogeneous) {
        m.eval = [alpha](double rho) {
            if (rho == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
            return std::pow(rho, alpha);
        };
    } else {
        m.eval = [alpha](double rho) { return std::pow(1.0 + rho, alpha); };
    }
    return m;
}

Spectrum apply_multiplier(const Spectrum& spectrum, const MultiplierSpec& spec) {
    const Grid2D& gr = spectrum.grid;
    if (spec.kind == MultiplierKind::FracDeriv && spec.homogeneous && spec.alpha < 0.0) {
        double total = 0.0;
        for (const cplx& c : spectrum.coeffs) total += std::norm(c);
        if (std::norm(spectrum.coeffs[0]) > 1e-24 * total && total > 0.0) {
            throw std::invalid_argument(
                "apply_multiplier: homogeneous negative order needs a vanishing zero mode");
        }
    }
    Spectrum out(gr);
    for (int iy = 0; iy < gr.n; ++iy) {
        const double fy = gr.freq(iy);
        for (int ix = 0; ix < gr.n; ++ix) {
            const double fx = gr.freq(ix);
            const double rho = std::hypot(fx, fy);
            out.at(ix, iy) = spec.eval(rho) * spectrum.at(ix, iy);
        }
    }
    return out;
}

Field apply_multiplier(const Field& field, const MultiplierSpec& spec) {
    return transform_inverse(apply_multiplier(transform_forward(field), spec));
}

Field littlewood_paley(const Field& field, double M, LpMode mode) {
    const double fmax = field.grid.n / (2.0 * field.grid.box_length);
    const double fmin = 1.0 / field.grid.box_length;
    if (M < 0.5 * fmin || M > 4.0 * fmax) {
        throw std::invalid_argument("littlewood_paley: scale M not representable on grid");
    }
    switch (mode) {
        case LpMode::Low: return apply_multiplier(field, MultiplierSpec::lp_low(M));
        case LpMode::Band: return apply_multiplier(field, MultiplierSpec::lp_band(M));
        case LpMode::High: return apply_multiplier(field, MultiplierSpec::lp_high(M));
    }
    throw std::logic_error("littlewood_paley: bad mode");
}

double lebesgue_norm(const Field& field, double r) {
    if (!(r >= 1.0)) throw std::invalid_argument("lebesgue_norm: need r >= 1");
    if (std::isinf(r)) {
        double m = 0.0;
        for (const cplx& z : field.values) m = std::max(m, std::abs(z));
        return m;
    }
    const double dx2 = field.grid.spacing() * field.grid.spacing();
    double acc = 0.0;
    for (const cplx& z : field.values) acc += std::pow(std::abs(z), r);
    return std::pow(acc * dx2, 1.0 / r);
}

double sobolev_norm(const Spectrum& spectrum, double s0, bool homogeneous) {
    const Grid2D& gr = spectrum.grid;
    if (homogeneous && s0 < 0.0) {
        double total = 0.0;
        for (const cplx& c : spectrum.coeffs) total += std::norm(c);
        if (std::norm(spectrum.coeffs[0]) > 1e-24 * total && total > 0.0) {
            throw std::invalid_argument(
                "sobolev_norm: homogeneous negative order needs a vanishing zero mode");
        }
    }
    double acc = 0.0;
    for (int iy = 0; iy < gr.n; ++iy) {
        const double fy = gr.freq(iy);
        for (int ix = 0; ix < gr.n; ++ix) {
            const double rho = std::hypot(gr.freq(ix), fy);
            double w;
            if (homogeneous) {
                w = (rho == 0.0) ? (s0 == 0.0 ? 1.0 : 0.0) : std::pow(rho, s0);
            } else {
                w = std::pow(1.0 + rho, s0);
            }
            acc += w * w * std::norm(spectrum.at(ix, iy));
        }
    }
    const double L = gr.box_length;
    return std::sqrt(acc / (L * L));
}

double sobolev_norm(const Field& field, double s0, bool homogeneous) {
    return sobolev_norm(transform_forward(field), s0, homogeneous);
}

void dealias_23(Spectrum& spectrum) {
    const Grid2D& gr = spectrum.grid;
    const double cut = gr.n / 3.0;
    for (int iy = 0; iy < gr.n; ++iy) {
        const int jy = std::abs(gr.freq_index(iy));
        for (int ix = 0; ix < gr.n; ++ix) {
            const int jx = std::abs(gr.freq_index(ix));
            if (jx > cut || jy > cut) spectrum.at(ix, iy) = cplx{0.0, 0.0};
        }
    }
}

Field dealias_23(const Field& field) {
    Spectrum s = transform_forward(field);
    dealias_23(s);
    return transform_inverse(s);
}

double high_band_mass_fraction(const Spectrum& spectrum) {
    const Grid2D& gr = spectrum.grid;
    const double cut = gr.n / 3.0;
    double total = 0.0, high = 0.0;
    for (int iy = 0; iy < gr.n; ++iy) {
        const int jy = std::abs(gr.freq_index(iy));
        for (int ix = 0; ix < gr.n; ++ix) {
            const int jx = std::abs(gr.freq_index(ix));
            const double p = std::norm(spectrum.at(ix, iy));
            total += p;
            if (jx > cut || jy > cut) high += p;
        }
    }
    return total > 0.0 ? high / total : 0.0;
}

void spectral_derivative_inplace(Spectrum& spectrum, int axis) {
    const Grid2D& gr = spectrum.grid;
    const cplx two_pi_i{0.0, 2.0 * std::numbers::pi};
    const int nyquist = gr.n / 2;
    for (int iy = 0; iy < gr.n; ++iy) {
        for (int ix = 0; ix < gr.n; ++ix) {
            // The self-conjugate Nyquist mode has no signed frequency; an odd
            // operator must annihilate it or real fields lose realness.
            const int i = axis == 0 ? ix : iy;
            if (i == nyquist) {
                spectrum.at(ix, iy) = cplx{0.0, 0.0};
                continue;
            }
            const double f = axis == 0 ? gr.freq(ix) : gr.freq(iy);
            spectrum.at(ix, iy) *= two_pi_i * f;
        }
    }
}

Field spectral_derivative(const Field& field, int axis) {
    Spectrum s = transform_forward(field);
    spectral_derivative_inplace(s, axis);
    return transform_inverse(s);
}

}  // namespace nlslab
