#pragma once

#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Grid2D grid;
    bool dealias = true;
    int snapshot_stride = 1;
    /// When set, evolve() tracks the mass fraction within box_length/8 of
    /// the boundary; Morawetz-type experiments require it to stay < 1e-8.
    bool boundary_monitor = false;

    void validate() const;
};

/// Time-ordered snapshots of the flow, uniformly spaced by dt * stride.
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> fields;
    SolverConfig config;
    double max_boundary_mass_fraction = 0.0;

    std::size_t size() const { return times.size(); }
};

/// Raised when the resolution guard trips (top 1/3 of modes carry too
/// much mass for the cubic products to stay alias-free).
struct SpectralBlockingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One Strang step: half nonlinear phase, full linear spectral step,
/// half nonlinear phase. Each substep is exact, so mass is preserved to
/// roundoff on band-limited data.
Field strang_step(const Field& field, double dt, bool dealias = true);

Trajectory evolve(const SolverConfig& config, const Field& u0);

/// Mass fraction within distance box_length/8 of the boundary.
double boundary_mass_fraction(const Field& u);

/// u^lambda(x) = u(x/lambda)/lambda on the same sample lattice with the
/// box side scaled by lambda. Preserves the L^2 norm exactly in 2D.
Field rescale(const Field& u, double lambda);

/// The balancing choice lambda = N^{(1-s)/s}.
double lambda_for(double N, double s);

/// Bisect lambda (in log space, around lambda_for) until the modified
/// energy E(I u0^lambda) lands in [1/2, 1].
double calibrate_lambda(const Field& u0, double N, double s);

struct ScalingParams {
    double N = 8.0;
    double s = 0.45;
    double lambda = 1.0;
    double K = 1.0;
    double mu0 = 0.1;
    double T0 = 1.0;

    void validate() const;
};

}  // namespace nlslab
