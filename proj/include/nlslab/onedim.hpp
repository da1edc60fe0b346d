#pragma once

#include <complex>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab::onedim {

/// 1D companion of the 2D scheme: same Strang splitting, same Fourier
/// conventions, used for the one-dimensional L^6 space-time estimate.
struct Grid1D {
    int n = 0;
    double box_length = 0.0;

    Grid1D() = default;
    Grid1D(int n_, double box_length_);
    double spacing() const { return box_length / n; }
    int freq_index(int i) const { return i < n / 2 ? i : i - n; }
    double freq(int i) const { return freq_index(i) / box_length; }
    double coord(int i) const { return i * spacing(); }
};

struct Field1D {
    Grid1D grid;
    std::vector<cplx> values;

    Field1D() = default;
    explicit Field1D(const Grid1D& g) : grid(g), values(g.n, cplx{0.0, 0.0}) {}
};

struct Trajectory1D {
    std::vector<double> times;
    std::vector<Field1D> fields;
};

Field1D strang_step(const Field1D& u, double dt, bool dealias = true);
Trajectory1D evolve(const Field1D& u0, double dt, double t_end, int snapshot_stride,
                    bool dealias = true);

double mass(const Field1D& u);
double lebesgue_norm(const Field1D& u, double r);
/// Homogeneous H^1 seminorm.
double h1_seminorm(const Field1D& u);

}  // namespace nlslab::onedim
