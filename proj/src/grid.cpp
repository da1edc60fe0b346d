#include "nlslab/grid.hpp"

#include <cmath>

namespace nlslab {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid2D::Grid2D(int n_, double box_length_) : n(n_), box_length(box_length_) {
    if (!is_pow2(n) || n < 8) {
        throw std::invalid_argument("Grid2D: n must be a power of two, n >= 8");
    }
    if (!(box_length > 0.0)) {
        throw std::invalid_argument("Grid2D: box_length must be positive");
    }
}

Field::Field(const Grid2D& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != g.size()) {
        throw std::invalid_argument("Field: sample count does not match grid");
    }
}

bool Field::all_finite() const {
    for (const cplx& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

}  // namespace nlslab
