#pragma once

#include "nlslab/grid.hpp"

namespace nlslab {

/// Forward transform: coeffs(xi) = sum_x u(x) e^{-2 pi i xi.x} dx^2.
/// Rejects fields with non-finite samples.
Spectrum transform_forward(const Field& field);

/// Inverse transform: u(x) = sum_xi coeffs(xi) e^{2 pi i xi.x} / L^2.
Field transform_inverse(const Spectrum& spectrum);

/// Unnormalized in-place DFTs on raw length-n^2 row-major data (2D) or
/// length-n data (1D). sign = -1 forward, +1 backward.
void raw_dft_2d(int n, cplx* data, int sign);
void raw_dft_1d(int n, cplx* data, int sign);

}  // namespace nlslab
