#include "nlslab/strichartz.hpp"

#include <cmath>

namespace nlslab {

AdmissiblePair::AdmissiblePair(double q_, double r_) : q(q_), r(r_) {
    if (!(q >= 2.0) || !(r >= 2.0)) {
        throw std::invalid_argument("AdmissiblePair: need q, r >= 2");
    }
    const double lhs = (std::isinf(q) ? 0.0 : 1.0 / q) + (std::isinf(r) ? 0.0 : 1.0 / r);
    if (std::abs(lhs - 0.5) > 1e-12) {
        throw std::invalid_argument("AdmissiblePair: 1/q + 1/r must equal 1/2");
    }
    if (q == 2.0) {
        throw std::invalid_argument("AdmissiblePair: endpoint (2, infinity) excluded");
    }
}

const std::vector<AdmissiblePair>& default_pair_set() {
    static const std::vector<AdmissiblePair> pairs = {
        {std::numeric_limits<double>::infinity(), 2.0},
        {8.0, 8.0 / 3.0},
        {4.0, 4.0},
        {3.0, 6.0},
        {8.0 / 3.0, 8.0},
    };
    return pairs;
}

double strichartz_norm(const Trajectory& traj, const AdmissiblePair& pair) {
    if (traj.size() == 0) throw std::invalid_argument("strichartz_norm: empty trajectory");
    std::vector<double> vals(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        vals[k] = lebesgue_norm(traj.fields[k], pair.r);
    }
    if (std::isinf(pair.q)) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        acc += 0.5 * dt * (std::pow(vals[k], pair.q) + std::pow(vals[k + 1], pair.q));
    }
    return std::pow(acc, 1.0 / pair.q);
}

double z_norm(const Trajectory& traj, double N, double s,
              const std::vector<AdmissiblePair>& pairs) {
    if (traj.size() == 0) throw std::invalid_argument("z_norm: empty trajectory");
    // <D> I as a single radial multiplier.
    MultiplierSpec di;
    di.kind = MultiplierKind::IMultiplier;
    di.N = N;
    di.s = s;
    di.eval = [N, s](double rho) { return (1.0 + rho) * i_multiplier_value(rho, N, s); };

    Trajectory smoothed;
    smoothed.times = traj.times;
    smoothed.config = traj.config;
    smoothed.fields.reserve(traj.size());
    for (const Field& u : traj.fields) {
        smoothed.fields.push_back(apply_multiplier(u, di));
    }
    double best = 0.0;
    for (const AdmissiblePair& p : pairs) {
        best = std::max(best, strichartz_norm(smoothed, p));
    }
    return best;
}

}  // namespace nlslab
