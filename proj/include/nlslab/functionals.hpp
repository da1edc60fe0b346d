#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/propagator.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

double mass(const Field& u);
std::array<double, 2> momentum(const Field& u);

/// E(u) = 1/2 int |grad u|^2 + 1/4 int |u|^4.
double energy(const Field& u);
double modified_energy(const Field& u, double N, double s);

/// {f,g}_p = Re(f grad(conj g) - g grad(conj f)), spectral gradients.
VectorField momentum_bracket(const Field& f, const Field& g);

/// T_{0j} = 2 Im(conj(u) d_j u).
VectorField momentum_density(const Field& u);
/// L_{jk} = -d_j d_k |u|^2 + 4 Re(d_j conj(u) d_k u).
MatrixField momentum_current(const Field& u);

/// L^2 norm of d_t T_{0j} + d_k L_{jk} - 2 {N,u}_p^j at snapshot k,
/// centered time differences, N = |u|^2 u.
double local_momentum_identity_residual(const Trajectory& traj, std::size_t k);

/// Sampled weight derivatives on a grid: gradient, Hessian, Laplacian and
/// the regular part of -Lap Lap a, all as functions of x - center.
struct WeightFields {
    VectorField grad;
    MatrixField hess;
    std::vector<double> lap;
    std::vector<double> bilap_regular;
};
WeightFields make_weight_fields(const Grid2D& grid, const RadialWeight& w,
                                std::array<double, 2> center);

/// M_a = 2 int grad a . Im(conj(u) grad u) dx.
double morawetz_action(const Field& u, const VectorField& grad_a);
double morawetz_action(const Field& u, const RadialWeight& w, std::array<double, 2> center);

struct VirialReport {
    double residual = 0.0;        // |[M_a]_{t1}^{t2} - int RHS dt|
    double min_lap_term = 0.0;    // min over snapshots of 2 int (Lap a) G
    double min_hess_term = 0.0;   // min over snapshots of 4 int (d_j d_k a) Re(...)
};
VirialReport virial_residual(const Trajectory& traj, const RadialWeight& w,
                             std::array<double, 2> center, std::size_t k1, std::size_t k2);

/// Sign-definite virial terms only (no residual), evaluated at every
/// snapshot; usable with delta-carrying weights since the bilaplacian
/// never enters.
VirialReport virial_positivity(const Trajectory& traj, const RadialWeight& w,
                               std::array<double, 2> center);

/// Interaction Morawetz action of u1 (x) u2 with weight a(x1 - x2),
/// evaluated through FFT correlations against the gradient kernel.
double interaction_action(const Field& u1, const Field& u2, const WeightSpec& weight);

/// I(|u|^2 u) - |Iu|^2 Iu with dealiased pointwise cubic products.
Field commutator(const Field& u, double N, double s, bool dealias = true);

/// (c0, c1) = L^1_t L^2_x norms of the commutator and its gradient.
std::array<double, 2> commutator_norms(const Trajectory& traj, double N, double s);

struct ErrorTermReport {
    double value = 0.0;            // time-integrated interaction bracket of N_bad
    double bound_surrogate = 0.0;  // (c0 + c1) * z_norm^3
};
ErrorTermReport error_term(const Trajectory& traj, double N, double s,
                           const WeightSpec& weight);

/// Instantaneous interaction bracket of N_bad at one snapshot.
double error_term_density(const Field& u, double N, double s, const WeightSpec& weight);

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double e_iu = 0.0;
    double px = 0.0, py = 0.0;
    double ma = 0.0;
    double ma2 = 0.0;
    double l4acc = 0.0;
    double c0 = 0.0;  // snapshot commutator L^2 norm
    double c1 = 0.0;  // snapshot commutator gradient L^2 norm
};

std::vector<DiagnosticsRecord> compute_diagnostics(
    const Trajectory& traj, double N, double s,
    const std::optional<WeightSpec>& weight = std::nullopt);

}  // namespace nlslab
