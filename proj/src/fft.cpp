#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nlslab {

namespace {

// Plan cache keyed by (rank, n, sign). Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can be executed on any buffer
// via the new-array interface. Creation is serialized; execution is
// thread-safe per FFTW's documentation.
class PlanCache {
  public:
    fftw_plan get(int rank, int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::tuple{rank, n, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> scratch(rank == 2 ? static_cast<std::size_t>(n) * n : n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = rank == 2
                          ? fftw_plan_dft_2d(n, n, buf, buf, sign,
                                             FFTW_ESTIMATE | FFTW_UNALIGNED)
                          : fftw_plan_dft_1d(n, buf, buf, sign,
                                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void raw_dft_2d(int n, cplx* data, int sign) {
    fftw_plan p = cache().get(2, n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, buf, buf);
}

void raw_dft_1d(int n, cplx* data, int sign) {
    fftw_plan p = cache().get(1, n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, buf, buf);
}

Spectrum transform_forward(const Field& field) {
    if (!field.all_finite()) {
        throw std::invalid_argument("transform_forward: field contains non-finite samples");
    }
    Spectrum out(field.grid);
    out.coeffs = field.values;
    raw_dft_2d(field.grid.n, out.coeffs.data(), FFTW_FORWARD);
    const double dx2 = field.grid.spacing() * field.grid.spacing();
    for (cplx& c : out.coeffs) c *= dx2;
    return out;
}

Field transform_inverse(const Spectrum& spectrum) {
    Field out(spectrum.grid);
    out.values = spectrum.coeffs;
    raw_dft_2d(spectrum.grid.n, out.values.data(), FFTW_BACKWARD);
    const double L = spectrum.grid.box_length;
    const double inv = 1.0 / (L * L);
    for (cplx& v : out.values) v *= inv;
    return out;
}

}  // namespace nlslab
