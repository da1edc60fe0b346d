#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/onedim.hpp"
#include "nlslab/propagator.hpp"

namespace nlslab {

/// Declarative description of one experiment run. Scenario names:
///   conservation, virial, interaction_morawetz_2d, l4_time_scaling,
///   l6_1d, almost_conservation_sweep, commutator_sweep, symbol_scan,
///   strichartz_spot_check, globalization_calc.
struct ExperimentPlan {
    std::string scenario;
    std::vector<double> N_list{8.0};
    std::vector<double> s_list{0.45};
    std::vector<double> T_list{1.0};
    double dt = 1e-3;
    int snapshot_stride = 10;
    int grid_n = 128;
    double box_length = 16.0;
    std::string data = "gaussian";  // gaussian | chirped | powerlaw
    double amplitude = 1.0;
    double width = 1.0;
    double chirp = 0.0;
    std::array<double, 2> velocity{0.0, 0.0};
    double powerlaw_p = 1.45;
    int band_limit = 80;
    double target_energy = 0.0;  // powerlaw: rescale amplitude to hit this energy
    double weight_M = 0.0;       // 0 => balance_M(T)
    std::uint64_t seed = 20240817;
    double K = 1.0;
    double mu0 = 0.1;
    bool boundary_monitor = false;
    std::string output_dir = "out";

    void validate() const;
    std::string to_json_text() const;
    static ExperimentPlan from_json_text(const std::string& text);
    /// Tuned desk-scale defaults per scenario.
    static ExperimentPlan defaults(const std::string& scenario);
};

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::string> notes;
    bool failed = false;

    void add_scalar(const std::string& name, double value);
    double scalar(const std::string& name) const;
    bool has_scalar(const std::string& name) const;
};

/// Section 5 bookkeeping: lambda = N^{(1-s)/s},
/// L = (2K)^4 N^{1/2} (lambda^2 T0)^{1/3} / mu0,
/// exponent = 3s(1-s) / (2(5s-2)), admissible iff L <= N^{3/2}.
struct Globalization {
    double lambda = 0.0;
    double L = 0.0;
    double exponent = 0.0;
    bool admissible = false;
};

Globalization globalization_calc(double s, double N, double T0, double K, double mu0);

/// Smallest dyadic N in [2^4, 2^200] with admissible = true; throws if none.
double admissibility_threshold(double s, double T0, double K, double mu0);

/// Data families.
Field gaussian_data(const Grid2D& grid, double A, double w, std::array<double, 2> center,
                    std::array<double, 2> velocity);
Field chirped_data(const Grid2D& grid, double A, double w, double chirp,
                   std::array<double, 2> center);
/// Random-phase field with |coeff| ~ (1 + |j|)^{-p} on the index ball
/// |j| <= band_limit; when target_energy > 0 the amplitude solves the
/// quartic energy equation for it.
Field powerlaw_data(const Grid2D& grid, double p, int band_limit, double amplitude,
                    std::uint64_t seed, double target_energy = 0.0);
onedim::Field1D gaussian_data_1d(const onedim::Grid1D& grid, double A, double w,
                                 double center);

/// Free (linear) trajectory sampled every dt_snap via exact spectral phases.
Trajectory linear_trajectory(const Field& u0, double dt_snap, double t_end);

/// Parallelism cap from NLSLAB_THREADS (default: hardware concurrency).
int thread_cap();
/// Runs fn(0..count-1), possibly on up to thread_cap() threads.
void for_indices(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Executes the plan: writes manifest.json first, then one CSV table, one
/// CSV scalar sheet and one SVG chart into plan.output_dir.
ResultTable run(const ExperimentPlan& plan);

std::string manifest_json(const ExperimentPlan& plan);

}  // namespace nlslab
