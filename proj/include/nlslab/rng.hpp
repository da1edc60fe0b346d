#pragma once

#include <cstdint>
#include <random>

namespace nlslab {

/// Seeded generator with portable uniform draws (std::mt19937_64 output
/// mapped to doubles directly, avoiding implementation-defined
/// distributions so runs are bit-reproducible across toolchains).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t bits() { return engine_(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace nlslab
