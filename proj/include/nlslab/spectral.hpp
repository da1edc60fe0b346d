#pragma once

#include <functional>
#include <string>

#include "nlslab/fft.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

/// C-infinity monotone step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

/// Smooth radial bump: 1 on [0,1], 0 on [2,inf), monotone bridge between.
double bump_eta(double rho);

/// I-operator multiplier m_{N,s}: 1 below N, (rho/N)^{s-1} above 2N, with
/// a smooth-step blend of the two branches on [N, 2N].
double i_multiplier_value(double rho, double N, double s);

enum class MultiplierKind { IMultiplier, LpLow, LpBand, LpHigh, FracDeriv };

/// Radial Fourier multiplier descriptor.
struct MultiplierSpec {
    MultiplierKind kind = MultiplierKind::IMultiplier;
    double N = 0.0;      // I-multiplier cutoff
    double s = 0.0;      // regularity index
    double M = 0.0;      // Littlewood-Paley scale
    double alpha = 0.0;  // fractional derivative order
    bool homogeneous = false;
    std::function<double(double)> eval;

    static MultiplierSpec i_multiplier(double N, double s);
    static MultiplierSpec lp_low(double M);
    static MultiplierSpec lp_band(double M);
    static MultiplierSpec lp_high(double M);
    static MultiplierSpec frac_deriv(double alpha, bool homogeneous);
};

/// Multiply the spectrum pointwise by eval(|xi|). Homogeneous negative
/// orders reject fields with a nonvanishing zero mode.
Field apply_multiplier(const Field& field, const MultiplierSpec& spec);
Spectrum apply_multiplier(const Spectrum& spectrum, const MultiplierSpec& spec);

enum class LpMode { Low, Band, High };

/// Littlewood-Paley projection at dyadic scale M.
Field littlewood_paley(const Field& field, double M, LpMode mode);

/// L^r norm by grid quadrature; r may be infinity.
double lebesgue_norm(const Field& field, double r);

/// Sobolev norm of order s0; homogeneous uses |xi|^{s0} with |0|^0 := 1,
/// inhomogeneous uses (1+|xi|)^{s0}.
double sobolev_norm(const Field& field, double s0, bool homogeneous);
double sobolev_norm(const Spectrum& spectrum, double s0, bool homogeneous);

/// 2/3-rule spectral truncation: zeroes modes with per-axis index
/// magnitude above n/3.
void dealias_23(Spectrum& spectrum);
Field dealias_23(const Field& field);

/// Fraction of spectral mass carried by the top-1/3 (dealias) band.
double high_band_mass_fraction(const Spectrum& spectrum);

/// Spectral partial derivative along axis (0 = x, 1 = y).
Field spectral_derivative(const Field& field, int axis);
void spectral_derivative_inplace(Spectrum& spectrum, int axis);

}  // namespace nlslab
