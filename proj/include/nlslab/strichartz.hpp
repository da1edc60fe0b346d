#pragma once

#include <vector>

#include "nlslab/propagator.hpp"

namespace nlslab {

/// Exponent pair with 1/q + 1/r = 1/2, 2 <= q,r <= infinity. The
/// endpoint (2, infinity) is excluded as unreliable under discretization.
struct AdmissiblePair {
    double q;
    double r;

    AdmissiblePair(double q_, double r_);
};

/// Finite pair set over which the Z_I supremum is approximated.
const std::vector<AdmissiblePair>& default_pair_set();

/// L^q_t L^r_x norm over the trajectory, composite trapezoid in time.
double strichartz_norm(const Trajectory& traj, const AdmissiblePair& pair);

/// max over the pair set of the Strichartz norm of <D> I u.
double z_norm(const Trajectory& traj, double N, double s,
              const std::vector<AdmissiblePair>& pairs = default_pair_set());

}  // namespace nlslab
