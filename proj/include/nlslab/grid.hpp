#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

/// Periodic square grid with n samples per axis on a box of side L.
/// Frequencies follow the e^{2*pi*i*xi*x} convention: xi_j = j/L with
/// j in [-n/2, n/2).
struct Grid2D {
    int n = 0;
    double box_length = 0.0;

    Grid2D() = default;
    Grid2D(int n_, double box_length_);

    double spacing() const { return box_length / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }

    /// Signed frequency index for sample index i: i for i < n/2, i - n otherwise.
    int freq_index(int i) const { return i < n / 2 ? i : i - n; }
    /// Physical frequency xi = j/L for sample index i along one axis.
    double freq(int i) const { return freq_index(i) / box_length; }
    /// Sample coordinate along one axis.
    double coord(int i) const { return i * spacing(); }

    friend bool operator==(const Grid2D& a, const Grid2D& b) {
        return a.n == b.n && a.box_length == b.box_length;
    }
};

/// Complex samples on a Grid2D, row-major: values[iy * n + ix].
struct Field {
    Grid2D grid;
    std::vector<cplx> values;

    Field() = default;
    explicit Field(const Grid2D& g) : grid(g), values(g.size(), cplx{0.0, 0.0}) {}
    Field(const Grid2D& g, std::vector<cplx> v);

    cplx& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * grid.n + ix]; }
    const cplx& at(int ix, int iy) const {
        return values[static_cast<std::size_t>(iy) * grid.n + ix];
    }
    bool all_finite() const;
};

/// Fourier coefficients of a Field; coeffs[iy * n + ix] belongs to
/// (freq(ix), freq(iy)). Carries the dx^2 quadrature measure so that
/// Plancherel reads sum |coeff|^2 / L^2 = sum |u|^2 dx^2.
struct Spectrum {
    Grid2D grid;
    std::vector<cplx> coeffs;

    Spectrum() = default;
    explicit Spectrum(const Grid2D& g) : grid(g), coeffs(g.size(), cplx{0.0, 0.0}) {}

    cplx& at(int ix, int iy) { return coeffs[static_cast<std::size_t>(iy) * grid.n + ix]; }
    const cplx& at(int ix, int iy) const {
        return coeffs[static_cast<std::size_t>(iy) * grid.n + ix];
    }
};

/// Real 2-vector samples (e.g. momentum density, gradients of weights).
struct VectorField {
    Grid2D grid;
    std::vector<double> x;  // component j = 1
    std::vector<double> y;  // component j = 2

    VectorField() = default;
    explicit VectorField(const Grid2D& g) : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}
};

/// Symmetric 2x2 real matrix samples (Hessians, momentum currents).
struct MatrixField {
    Grid2D grid;
    std::vector<double> xx, xy, yy;

    MatrixField() = default;
    explicit MatrixField(const Grid2D& g)
        : grid(g), xx(g.size(), 0.0), xy(g.size(), 0.0), yy(g.size(), 0.0) {}
};

}  // namespace nlslab
