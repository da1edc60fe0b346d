#include "nlslab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "nlslab/fit.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/io.hpp"
#include "nlslab/rng.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/svg.hpp"
#include "nlslab/symbols.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- plan

void ExperimentPlan::validate() const {
    static const std::vector<std::string> known = {
        "conservation",       "virial",        "interaction_morawetz_2d",
        "l4_time_scaling",    "l6_1d",         "almost_conservation_sweep",
        "commutator_sweep",   "symbol_scan",   "strichartz_spot_check",
        "globalization_calc"};
    if (std::find(known.begin(), known.end(), scenario) == known.end()) {
        throw std::invalid_argument("ExperimentPlan: unknown scenario '" + scenario + "'");
    }
    if (N_list.empty() || s_list.empty() || T_list.empty()) {
        throw std::invalid_argument("ExperimentPlan: parameter grids must be nonempty");
    }
    if (!(dt > 0.0) || snapshot_stride < 1) {
        throw std::invalid_argument("ExperimentPlan: bad time discretization");
    }
    if (output_dir.empty()) throw std::invalid_argument("ExperimentPlan: output_dir empty");
}

std::string ExperimentPlan::to_json_text() const {
    json j;
    j["scenario"] = scenario;
    j["N_list"] = N_list;
    j["s_list"] = s_list;
    j["T_list"] = T_list;
    j["dt"] = dt;
    j["snapshot_stride"] = snapshot_stride;
    j["grid_n"] = grid_n;
    j["box_length"] = box_length;
    j["data"] = data;
    j["amplitude"] = amplitude;
    j["width"] = width;
    j["chirp"] = chirp;
    j["velocity"] = velocity;
    j["powerlaw_p"] = powerlaw_p;
    j["band_limit"] = band_limit;
    j["target_energy"] = target_energy;
    j["weight_M"] = weight_M;
    j["seed"] = seed;
    j["K"] = K;
    j["mu0"] = mu0;
    j["boundary_monitor"] = boundary_monitor;
    j["output_dir"] = output_dir;
    return j.dump(2) + "\n";
}

ExperimentPlan ExperimentPlan::from_json_text(const std::string& text) {
    const json j = json::parse(text);
    ExperimentPlan p;
    p.scenario = j.at("scenario").get<std::string>();
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("N_list", p.N_list);
    get("s_list", p.s_list);
    get("T_list", p.T_list);
    get("dt", p.dt);
    get("snapshot_stride", p.snapshot_stride);
    get("grid_n", p.grid_n);
    get("box_length", p.box_length);
    get("data", p.data);
    get("amplitude", p.amplitude);
    get("width", p.width);
    get("chirp", p.chirp);
    get("velocity", p.velocity);
    get("powerlaw_p", p.powerlaw_p);
    get("band_limit", p.band_limit);
    get("target_energy", p.target_energy);
    get("weight_M", p.weight_M);
    get("seed", p.seed);
    get("K", p.K);
    get("mu0", p.mu0);
    get("boundary_monitor", p.boundary_monitor);
    get("output_dir", p.output_dir);
    p.validate();
    return p;
}

ExperimentPlan ExperimentPlan::defaults(const std::string& scenario) {
    ExperimentPlan p;
    p.scenario = scenario;
    if (scenario == "conservation") {
        p.grid_n = 128;
        p.box_length = 16.0;
        p.dt = 1e-3;
        p.snapshot_stride = 10;
        p.T_list = {1.0};
        p.amplitude = 1.0;
        p.width = 1.0;
        p.velocity = {0.25, 0.0};  // one quarter: periodic since L * v is an integer
    } else if (scenario == "virial") {
        p.grid_n = 128;
        p.box_length = 32.0;
        p.dt = 1e-3;
        p.snapshot_stride = 20;
        p.T_list = {1.0};
        p.amplitude = 1.0;
        p.width = 2.0;
        p.weight_M = 4.0;
        p.boundary_monitor = true;
    } else if (scenario == "interaction_morawetz_2d") {
        p.grid_n = 512;
        p.box_length = 128.0;
        p.dt = 2e-3;
        p.snapshot_stride = 50;
        p.T_list = {1.0, 2.0, 4.0, 8.0};
        p.N_list = {0.1};
        p.s_list = {0.45};
        p.amplitude = 1.0;
        p.width = 4.0;
        p.boundary_monitor = true;
    } else if (scenario == "l4_time_scaling") {
        p.grid_n = 256;
        p.box_length = 64.0;
        p.dt = 2e-3;
        p.snapshot_stride = 25;
        p.T_list = {8.0};
        p.N_list = {0.1};
        p.s_list = {0.45};
        p.amplitude = 1.0;
        p.width = 1.0;
    } else if (scenario == "l6_1d") {
        p.grid_n = 1024;
        p.box_length = 64.0;
        p.dt = 1e-3;
        p.snapshot_stride = 25;
        p.T_list = {1.0, 2.0, 4.0, 8.0};
        p.amplitude = 1.0;
        p.width = 2.0;
    } else if (scenario == "almost_conservation_sweep") {
        p.grid_n = 256;
        p.box_length = 0.25;
        p.dt = 1e-4;
        p.snapshot_stride = 100;
        p.T_list = {1.0};
        p.N_list = {4.0, 8.0, 16.0, 32.0};
        p.s_list = {0.45};
        p.data = "powerlaw";
        p.powerlaw_p = 1.45;
        p.band_limit = 80;
        p.target_energy = 20.0;
    } else if (scenario == "commutator_sweep") {
        p.grid_n = 256;
        p.box_length = 1.0;
        p.dt = 1e-3;
        p.snapshot_stride = 25;
        p.T_list = {0.25};
        p.N_list = {4.0, 8.0, 16.0, 32.0};
        p.s_list = {0.45};
        p.data = "chirped";
        p.amplitude = 1.0;
        p.width = 0.1;
        p.chirp = 350.0;
    } else if (scenario == "symbol_scan") {
        p.N_list = {8.0, 32.0};
        p.s_list = {0.3, 0.45};
    } else if (scenario == "strichartz_spot_check") {
        p.grid_n = 128;
        p.box_length = 16.0;
        p.T_list = {1.0};
        p.band_limit = 30;
    } else if (scenario == "globalization_calc") {
        p.s_list = {0.42, 0.45, 0.5, 0.6, 0.75};
        p.T_list = {1.0};
    }
    p.validate();
    return p;
}

// ----------------------------------------------------------- utilities

void ResultTable::add_scalar(const std::string& name, double value) {
    scalars.emplace_back(name, value);
}

double ResultTable::scalar(const std::string& name) const {
    for (const auto& [k, v] : scalars) {
        if (k == name) return v;
    }
    throw std::out_of_range("ResultTable: no scalar named " + name);
}

bool ResultTable::has_scalar(const std::string& name) const {
    for (const auto& [k, v] : scalars) {
        if (k == name) return true;
    }
    return false;
}

int thread_cap() {
    if (const char* env = std::getenv("NLSLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void for_indices(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

Globalization globalization_calc(double s, double N, double T0, double K, double mu0) {
    if (!(N > 0.0) || !(T0 > 0.0) || !(K > 0.0) || !(mu0 > 0.0) || !(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("globalization_calc: inputs must be positive, s in (0,1)");
    }
    Globalization g;
    g.lambda = std::pow(N, (1.0 - s) / s);
    g.L = std::pow(2.0 * K, 4.0) * std::sqrt(N) *
          std::cbrt(g.lambda * g.lambda * T0) / mu0;
    if (s <= 0.4) {
        g.exponent = std::numeric_limits<double>::infinity();
        g.admissible = false;
    } else {
        g.exponent = 3.0 * s * (1.0 - s) / (2.0 * (5.0 * s - 2.0));
        g.admissible = g.L <= std::pow(N, 1.5);
    }
    return g;
}

double admissibility_threshold(double s, double T0, double K, double mu0) {
    for (double N = 16.0; N <= std::pow(2.0, 200); N *= 2.0) {
        if (globalization_calc(s, N, T0, K, mu0).admissible) return N;
    }
    throw std::runtime_error("admissibility_threshold: no admissible N up to 2^200");
}

// ----------------------------------------------------------- data families

namespace {
double min_image_delta(double x, double c, double L) {
    double d = x - c;
    d -= L * std::round(d / L);
    return d;
}
}  // namespace

Field gaussian_data(const Grid2D& grid, double A, double w, std::array<double, 2> center,
                    std::array<double, 2> velocity) {
    if (!(w > 0.0)) throw std::invalid_argument("gaussian_data: width must be positive");
    Field u(grid);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < grid.n; ++iy) {
        const double y = grid.coord(iy);
        const double dy = min_image_delta(y, center[1], grid.box_length);
        for (int ix = 0; ix < grid.n; ++ix) {
            const double x = grid.coord(ix);
            const double dx = min_image_delta(x, center[0], grid.box_length);
            const double env = A * std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
            const double phase = two_pi * (velocity[0] * x + velocity[1] * y);
            u.at(ix, iy) = env * cplx{std::cos(phase), std::sin(phase)};
        }
    }
    return u;
}

Field chirped_data(const Grid2D& grid, double A, double w, double chirp,
                   std::array<double, 2> center) {
    if (!(w > 0.0)) throw std::invalid_argument("chirped_data: width must be positive");
    Field u(grid);
    for (int iy = 0; iy < grid.n; ++iy) {
        const double dy = min_image_delta(grid.coord(iy), center[1], grid.box_length);
        for (int ix = 0; ix < grid.n; ++ix) {
            const double dx = min_image_delta(grid.coord(ix), center[0], grid.box_length);
            const double r2 = dx * dx + dy * dy;
            const double env = A * std::exp(-r2 / (2.0 * w * w));
            const double phase = chirp * r2;
            u.at(ix, iy) = env * cplx{std::cos(phase), std::sin(phase)};
        }
    }
    return u;
}

Field powerlaw_data(const Grid2D& grid, double p, int band_limit, double amplitude,
                    std::uint64_t seed, double target_energy) {
    if (band_limit < 1 || 2 * band_limit >= grid.n) {
        throw std::invalid_argument("powerlaw_data: band limit not representable");
    }
    Rng rng(seed);
    Spectrum s(grid);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int iy = 0; iy < grid.n; ++iy) {
        const int jy = grid.freq_index(iy);
        for (int ix = 0; ix < grid.n; ++ix) {
            const int jx = grid.freq_index(ix);
            const double aj = std::hypot(double(jx), double(jy));
            if (aj > band_limit) continue;
            const double mag = std::pow(1.0 + aj, -p);
            const double phase = two_pi * rng.uniform();
            s.at(ix, iy) = mag * cplx{std::cos(phase), std::sin(phase)};
        }
    }
    Field u = transform_inverse(s);
    if (target_energy > 0.0) {
        // E(alpha u) = alpha^2 a + alpha^4 b; pick alpha hitting the target.
        double quart = 0.0;
        const double m = grid.spacing() * grid.spacing();
        for (const cplx& z : u.values) quart += std::norm(z) * std::norm(z);
        const double b = 0.25 * quart * m;
        const double a = energy(u) - b;
        const double alpha2 =
            (-a + std::sqrt(a * a + 4.0 * b * target_energy)) / (2.0 * b);
        amplitude = std::sqrt(alpha2);
    }
    for (cplx& z : u.values) z *= amplitude;
    return u;
}

onedim::Field1D gaussian_data_1d(const onedim::Grid1D& grid, double A, double w,
                                 double center) {
    onedim::Field1D u(grid);
    for (int i = 0; i < grid.n; ++i) {
        const double d = min_image_delta(grid.coord(i), center, grid.box_length);
        u.values[i] = A * std::exp(-d * d / (2.0 * w * w));
    }
    return u;
}

Trajectory linear_trajectory(const Field& u0, double dt_snap, double t_end) {
    if (!(dt_snap > 0.0) || !(t_end >= dt_snap)) {
        throw std::invalid_argument("linear_trajectory: bad time discretization");
    }
    Spectrum s0 = transform_forward(u0);
    const Grid2D& g = u0.grid;
    const double two_pi = 2.0 * std::numbers::pi;
    Trajectory traj;
    traj.config.dt = dt_snap;
    traj.config.t_end = t_end;
    traj.config.grid = g;
    traj.config.dealias = false;
    const long nsnap = std::lround(t_end / dt_snap);
    for (long k = 0; k <= nsnap; ++k) {
        const double t = k * dt_snap;
        Spectrum st(g);
        for (int iy = 0; iy < g.n; ++iy) {
            const double fy = g.freq(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double fx = g.freq(ix);
                const double omega = two_pi * two_pi * (fx * fx + fy * fy);
                const double ph = -omega * t;
                st.at(ix, iy) = s0.at(ix, iy) * cplx{std::cos(ph), std::sin(ph)};
            }
        }
        traj.times.push_back(t);
        traj.fields.push_back(transform_inverse(st));
    }
    return traj;
}

// ----------------------------------------------------------- scenarios

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& f,
                 std::size_t count) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < count; ++k) {
        acc += 0.5 * (t[k + 1] - t[k]) * (f[k] + f[k + 1]);
    }
    return acc;
}

Field plan_data(const ExperimentPlan& plan, const Grid2D& grid) {
    const std::array<double, 2> c{grid.box_length / 2.0, grid.box_length / 2.0};
    if (plan.data == "gaussian") {
        return gaussian_data(grid, plan.amplitude, plan.width, c, plan.velocity);
    }
    if (plan.data == "chirped") {
        return chirped_data(grid, plan.amplitude, plan.width, plan.chirp, c);
    }
    if (plan.data == "powerlaw") {
        return powerlaw_data(grid, plan.powerlaw_p, plan.band_limit, plan.amplitude,
                             plan.seed, plan.target_energy);
    }
    throw std::invalid_argument("unknown data family '" + plan.data + "'");
}

Trajectory evolve_plan(const ExperimentPlan& plan, const Field& u0, double dt, double T) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = T;
    cfg.grid = u0.grid;
    cfg.snapshot_stride = plan.snapshot_stride;
    cfg.boundary_monitor = plan.boundary_monitor;
    return evolve(cfg, u0);
}

std::size_t prefix_count(const Trajectory& traj, double T) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] <= T + 1e-9) count = k + 1;
    }
    return count;
}

Trajectory prefix(const Trajectory& traj, double T) {
    const std::size_t count = prefix_count(traj, T);
    Trajectory sub;
    sub.config = traj.config;
    sub.config.t_end = traj.times[count - 1];
    sub.times.assign(traj.times.begin(), traj.times.begin() + count);
    sub.fields.assign(traj.fields.begin(), traj.fields.begin() + count);
    sub.max_boundary_mass_fraction = traj.max_boundary_mass_fraction;
    return sub;
}

ResultTable scenario_conservation(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const Field u0 = plan_data(plan, grid);
    const double T = plan.T_list.front();

    auto series = [&](double dt, int stride) {
        ExperimentPlan p = plan;
        p.snapshot_stride = stride;
        return evolve_plan(p, u0, dt, T);
    };
    const Trajectory coarse = series(plan.dt, plan.snapshot_stride);
    const Trajectory fine = series(plan.dt / 2.0, plan.snapshot_stride * 2);

    auto drifts = [&](const Trajectory& traj) {
        const double m0 = mass(traj.fields[0]);
        const double e0 = energy(traj.fields[0]);
        const auto p0 = momentum(traj.fields[0]);
        const double pn0 = std::hypot(p0[0], p0[1]);
        double dm = 0.0, de = 0.0, dp = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            dm = std::max(dm, std::abs(mass(traj.fields[k]) - m0) / m0);
            de = std::max(de, std::abs(energy(traj.fields[k]) - e0));
            const auto p = momentum(traj.fields[k]);
            dp = std::max(dp, std::hypot(p[0] - p0[0], p[1] - p0[1]) /
                                  std::max(pn0, 1e-300));
        }
        return std::array<double, 3>{dm, de, dp};
    };
    const auto dc = drifts(coarse);
    const auto df = drifts(fine);

    ResultTable table;
    table.columns = {"t", "mass", "energy", "px", "py"};
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        const auto p = momentum(coarse.fields[k]);
        table.rows.push_back({coarse.times[k], mass(coarse.fields[k]),
                              energy(coarse.fields[k]), p[0], p[1]});
    }
    table.add_scalar("mass_drift", dc[0]);
    table.add_scalar("momentum_drift", dc[2]);
    table.add_scalar("energy_drift_dt", dc[1]);
    table.add_scalar("energy_drift_half", df[1]);
    table.add_scalar("energy_ratio", dc[1] / std::max(df[1], 1e-300));
    return table;
}

ResultTable scenario_virial(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const Field u0 = plan_data(plan, grid);
    const double T = plan.T_list.front();
    const double M = plan.weight_M > 0.0 ? plan.weight_M : balance_M(T);
    const WeightSpec spec = build_weight(M);
    const RadialWeight rw = radial_weight(spec);
    const std::array<double, 2> center{grid.box_length / 2.0 + grid.spacing() / 2.0,
                                       grid.box_length / 2.0 + grid.spacing() / 2.0};

    const Trajectory traj = evolve_plan(plan, u0, plan.dt, T);
    const VirialReport rep = virial_positivity(traj, rw, center);

    ResultTable table;
    table.columns = {"t", "morawetz_action"};
    for (std::size_t k = 0; k < traj.size(); ++k) {
        table.rows.push_back({traj.times[k], morawetz_action(traj.fields[k], rw, center)});
    }
    table.add_scalar("weight_M", M);
    table.add_scalar("min_lap_term", rep.min_lap_term);
    table.add_scalar("min_hess_term", rep.min_hess_term);
    table.add_scalar("boundary_mass_fraction", traj.max_boundary_mass_fraction);
    return table;
}

ResultTable scenario_interaction_morawetz(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const Field u0 = plan_data(plan, grid);
    const double N = plan.N_list.front();
    const double s = plan.s_list.front();
    const double Tmax = *std::max_element(plan.T_list.begin(), plan.T_list.end());
    const Trajectory traj = evolve_plan(plan, u0, plan.dt, Tmax);

    const MultiplierSpec im = MultiplierSpec::i_multiplier(N, s);
    std::vector<double> l4(traj.size()), h1(traj.size()), l2(traj.size());
    for_indices(traj.size(), [&](std::size_t k) {
        const Field iu = apply_multiplier(traj.fields[k], im);
        l4[k] = std::pow(lebesgue_norm(iu, 4.0), 4.0);
        h1[k] = sobolev_norm(iu, 1.0, true);
        l2[k] = lebesgue_norm(iu, 2.0);
    });
    const double mass4 = std::pow(lebesgue_norm(u0, 2.0), 4.0);

    ResultTable table;
    table.columns = {"T", "M", "lhs", "sup_term", "mass4", "error_value",
                     "error_surrogate", "ratio"};
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (double T : plan.T_list) {
        const std::size_t count = prefix_count(traj, T);
        const double lhs = trapezoid(traj.times, l4, count);
        double sup_term = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            sup_term = std::max(sup_term, h1[k] * l2[k] * l2[k] * l2[k]);
        }
        const double M = plan.weight_M > 0.0 ? plan.weight_M : balance_M(T);
        const WeightSpec w = build_weight(M);
        const ErrorTermReport err = error_term(prefix(traj, T), N, s, w);
        const double rhs =
            std::cbrt(T) * (sup_term + mass4) + std::cbrt(T) * std::abs(err.value);
        const double ratio = lhs / rhs;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        table.rows.push_back(
            {T, M, lhs, sup_term, mass4, err.value, err.bound_surrogate, ratio});
    }
    table.add_scalar("ratio_min", rmin);
    table.add_scalar("ratio_max", rmax);
    table.add_scalar("ratio_spread", rmax / rmin);
    table.add_scalar("boundary_mass_fraction", traj.max_boundary_mass_fraction);
    return table;
}

ResultTable scenario_l4_time_scaling(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const Field u0 = plan_data(plan, grid);
    const double N = plan.N_list.front();
    const double s = plan.s_list.front();
    const double T = plan.T_list.back();
    const Trajectory traj = evolve_plan(plan, u0, plan.dt, T);

    const MultiplierSpec im = MultiplierSpec::i_multiplier(N, s);
    std::vector<double> l4(traj.size());
    for_indices(traj.size(), [&](std::size_t k) {
        l4[k] = std::pow(lebesgue_norm(apply_multiplier(traj.fields[k], im), 4.0), 4.0);
    });
    std::vector<double> acc(traj.size(), 0.0);
    for (std::size_t k = 1; k < traj.size(); ++k) {
        acc[k] = acc[k - 1] +
                 0.5 * (traj.times[k] - traj.times[k - 1]) * (l4[k] + l4[k - 1]);
    }

    const double n8 = std::pow(N, 0.125);
    double K = 0.0;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double t = traj.times[k];
        if (t > T / 4.0 + 1e-12) break;
        K = std::max(K, std::pow(acc[k], 0.25) / (n8 * std::pow(t, 1.0 / 12.0)));
    }
    double max_ratio = 0.0;
    ResultTable table;
    table.columns = {"t", "l4acc", "budget"};
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double budget = std::pow(K * n8 * std::pow(traj.times[k], 1.0 / 12.0), 4.0);
        max_ratio = std::max(max_ratio, acc[k] / budget);
        table.rows.push_back({traj.times[k], acc[k], budget});
    }
    table.add_scalar("K", K);
    table.add_scalar("max_budget_ratio", max_ratio);
    table.add_scalar("within_budget", max_ratio <= 1.0 + 1e-9 ? 1.0 : 0.0);
    return table;
}

ResultTable scenario_l6_1d(const ExperimentPlan& plan) {
    const onedim::Grid1D grid(plan.grid_n, plan.box_length);
    const onedim::Field1D u0 =
        gaussian_data_1d(grid, plan.amplitude, plan.width, plan.box_length / 2.0);
    const double Tmax = *std::max_element(plan.T_list.begin(), plan.T_list.end());
    const onedim::Trajectory1D traj =
        onedim::evolve(u0, plan.dt, Tmax, plan.snapshot_stride);

    std::vector<double> l6(traj.fields.size()), l2(traj.fields.size()),
        h1(traj.fields.size());
    for (std::size_t k = 0; k < traj.fields.size(); ++k) {
        l6[k] = std::pow(onedim::lebesgue_norm(traj.fields[k], 6.0), 6.0);
        l2[k] = onedim::lebesgue_norm(traj.fields[k], 2.0);
        h1[k] = onedim::h1_seminorm(traj.fields[k]);
    }
    const double l2_0 = l2[0];

    ResultTable table;
    table.columns = {"T", "lhs", "rhs", "ratio"};
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (double T : plan.T_list) {
        std::size_t count = 0;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            if (traj.times[k] <= T + 1e-9) count = k + 1;
        }
        const double lhs = trapezoid(traj.times, l6, count);
        double sup = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            sup = std::max(sup, std::pow(l2[k], 5.0) * h1[k]);
        }
        const double rhs = std::cbrt(T) * (sup + std::pow(l2_0, 6.0));
        const double ratio = lhs / rhs;
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
        table.rows.push_back({T, lhs, rhs, ratio});
    }
    table.add_scalar("ratio_min", rmin);
    table.add_scalar("ratio_max", rmax);
    table.add_scalar("ratio_spread", rmax / rmin);
    return table;
}

ResultTable scenario_almost_conservation(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const Field u0 = plan_data(plan, grid);
    const double s = plan.s_list.front();
    const double T = plan.T_list.front();

    const std::size_t count = plan.N_list.size();
    std::vector<double> lambdas(count), e0s(count), incs(count);
    for_indices(count, [&](std::size_t i) {
        const double N = plan.N_list[i];
        const double lambda = calibrate_lambda(u0, N, s);
        const Field v0 = rescale(u0, lambda);
        ExperimentPlan p = plan;
        p.boundary_monitor = false;  // torus-intrinsic data
        const Trajectory traj = evolve_plan(p, v0, plan.dt, T);
        const double e0 = modified_energy(v0, N, s);
        double inc = 0.0;
        for (std::size_t k = 0; k < traj.size(); ++k) {
            inc = std::max(inc, std::abs(modified_energy(traj.fields[k], N, s) - e0));
        }
        lambdas[i] = lambda;
        e0s[i] = e0;
        incs[i] = inc;
    });

    ResultTable table;
    table.columns = {"N", "lambda", "e_iu0", "increment"};
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < count; ++i) {
        table.rows.push_back({plan.N_list[i], lambdas[i], e0s[i], incs[i]});
        pts.emplace_back(plan.N_list[i], incs[i]);
    }
    const SlopeFit fit = fit_loglog_slope(pts);
    table.add_scalar("slope", fit.slope);
    table.add_scalar("fit_residual", fit.residual);
    return table;
}

ResultTable scenario_commutator_sweep(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const Field u0 = plan_data(plan, grid);
    const double s = plan.s_list.front();
    const Trajectory traj = evolve_plan(plan, u0, plan.dt, plan.T_list.front());

    const std::size_t count = plan.N_list.size();
    std::vector<double> c0s(count), c1s(count);
    for_indices(count, [&](std::size_t i) {
        const auto [c0, c1] = commutator_norms(traj, plan.N_list[i], s);
        c0s[i] = c0;
        c1s[i] = c1;
    });

    ResultTable table;
    table.columns = {"N", "c0", "c1"};
    std::vector<std::pair<double, double>> pts0, pts1;
    for (std::size_t i = 0; i < count; ++i) {
        table.rows.push_back({plan.N_list[i], c0s[i], c1s[i]});
        pts0.emplace_back(plan.N_list[i], c0s[i]);
        pts1.emplace_back(plan.N_list[i], c1s[i]);
    }
    table.add_scalar("slope_c0", fit_loglog_slope(pts0).slope);
    table.add_scalar("slope_c1", fit_loglog_slope(pts1).slope);
    return table;
}

ResultTable scenario_symbol_scan(const ExperimentPlan& plan) {
    constexpr long kSamples = 100000;
    const std::array<RegionTag, 4> regions{RegionTag::Omega1, RegionTag::Omega2,
                                           RegionTag::Omega3, RegionTag::Omega4};
    ResultTable table;
    table.columns = {"region", "N", "s", "samples", "sup_abs", "sup_abs_seed2"};
    double sup_omega1 = 0.0, sup_max = 0.0, seed_dev = 0.0;
    for (double N : plan.N_list) {
        for (double s : plan.s_list) {
            for (std::size_t ri = 0; ri < regions.size(); ++ri) {
                const ScanResult r1 = scan_bounds(regions[ri], N, s, kSamples, plan.seed);
                const ScanResult r2 =
                    scan_bounds(regions[ri], N, s, kSamples, plan.seed + 1);
                table.rows.push_back({double(ri + 1), N, s, double(r1.samples),
                                      r1.sup_abs, r2.sup_abs});
                if (regions[ri] == RegionTag::Omega1) {
                    sup_omega1 = std::max(sup_omega1, std::max(r1.sup_abs, r2.sup_abs));
                } else {
                    sup_max = std::max(sup_max, std::max(r1.sup_abs, r2.sup_abs));
                    const double hi = std::max(r1.sup_abs, r2.sup_abs);
                    if (hi > 0.0) {
                        seed_dev =
                            std::max(seed_dev, std::abs(r1.sup_abs - r2.sup_abs) / hi);
                    }
                }
            }
        }
    }
    table.add_scalar("sup_omega1", sup_omega1);
    table.add_scalar("sup_max", sup_max);
    table.add_scalar("seed_rel_dev_max", seed_dev);
    return table;
}

ResultTable scenario_strichartz_spot_check(const ExperimentPlan& plan) {
    const Grid2D grid(plan.grid_n, plan.box_length);
    const double T = plan.T_list.front();
    constexpr int kSamples = 20;

    ResultTable table;
    table.columns = {"sample", "l4tx_over_l2"};
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (int sample = 0; sample < kSamples; ++sample) {
        Field u0 = powerlaw_data(grid, 0.0, plan.band_limit, 1.0,
                                 plan.seed + static_cast<std::uint64_t>(sample));
        const double m = std::sqrt(mass(u0));
        for (cplx& z : u0.values) z /= m;  // L^2-normalize
        const Trajectory traj = linear_trajectory(u0, T / 50.0, T);
        std::vector<double> l4(traj.size());
        for (std::size_t k = 0; k < traj.size(); ++k) {
            l4[k] = std::pow(lebesgue_norm(traj.fields[k], 4.0), 4.0);
        }
        const double ratio = std::pow(trapezoid(traj.times, l4, traj.size()), 0.25);
        rmax = std::max(rmax, ratio);
        rmin = std::min(rmin, ratio);
        table.rows.push_back({double(sample), ratio});
    }
    table.add_scalar("ratio_max", rmax);
    table.add_scalar("ratio_min", rmin);
    return table;
}

ResultTable scenario_globalization(const ExperimentPlan& plan) {
    ResultTable table;
    table.columns = {"s", "N", "lambda", "L", "exponent", "admissible"};
    const double T0 = plan.T_list.front();
    for (double s : plan.s_list) {
        for (double N = 16.0; N <= 1024.0; N *= 2.0) {
            const Globalization g = globalization_calc(s, N, T0, plan.K, plan.mu0);
            table.rows.push_back({s, N, g.lambda, g.L, g.exponent, g.admissible ? 1.0 : 0.0});
        }
    }
    table.add_scalar("exponent_half",
                     globalization_calc(0.5, 16.0, T0, plan.K, plan.mu0).exponent);
    return table;
}

ResultTable dispatch(const ExperimentPlan& plan) {
    if (plan.scenario == "conservation") return scenario_conservation(plan);
    if (plan.scenario == "virial") return scenario_virial(plan);
    if (plan.scenario == "interaction_morawetz_2d") {
        return scenario_interaction_morawetz(plan);
    }
    if (plan.scenario == "l4_time_scaling") return scenario_l4_time_scaling(plan);
    if (plan.scenario == "l6_1d") return scenario_l6_1d(plan);
    if (plan.scenario == "almost_conservation_sweep") {
        return scenario_almost_conservation(plan);
    }
    if (plan.scenario == "commutator_sweep") return scenario_commutator_sweep(plan);
    if (plan.scenario == "symbol_scan") return scenario_symbol_scan(plan);
    if (plan.scenario == "strichartz_spot_check") {
        return scenario_strichartz_spot_check(plan);
    }
    if (plan.scenario == "globalization_calc") return scenario_globalization(plan);
    throw std::invalid_argument("run: unknown scenario");
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string manifest_json(const ExperimentPlan& plan) {
    json j;
    j["plan"] = json::parse(plan.to_json_text());
    j["plan_hash"] = fnv1a(plan.to_json_text());
    j["code_version"] = "1.0.0";
    j["seed"] = plan.seed;
    j["bump"] = "C-inf smooth step g(t)=exp(-1/t), eta = 1 on [0,1], 0 on [2,inf)";
    j["bridge"] =
        "derivative-space cubic Hermite: f' steps from the inner slope to 100 with "
        "f''=0 at both junctions; outer branch carries an additive offset";
    return j.dump(2) + "\n";
}

ResultTable run(const ExperimentPlan& plan) {
    plan.validate();
    fs::create_directories(plan.output_dir);
    write_text_file((fs::path(plan.output_dir) / "manifest.json").string(),
                    manifest_json(plan));

    ResultTable table;
    try {
        table = dispatch(plan);
    } catch (const SpectralBlockingError& e) {
        table.failed = true;
        table.notes.push_back(e.what());
    }

    CsvTable csv;
    csv.header = table.columns.empty() ? std::vector<std::string>{"empty"} : table.columns;
    for (const auto& row : table.rows) csv.add_row(row);
    write_csv((fs::path(plan.output_dir) / (plan.scenario + "_table.csv")).string(), csv);

    CsvTable scal;
    scal.header = {"name", "value"};
    for (const auto& [k, v] : table.scalars) {
        scal.add_row(std::vector<std::string>{k, format_double(v)});
    }
    scal.add_row(std::vector<std::string>{"failed", table.failed ? "1" : "0"});
    for (const auto& note : table.notes) {
        scal.add_row(std::vector<std::string>{"note", note});
    }
    write_csv((fs::path(plan.output_dir) / (plan.scenario + "_scalars.csv")).string(),
              scal);

    if (!table.rows.empty() && table.columns.size() >= 2) {
        SvgChart chart;
        chart.title = plan.scenario;
        chart.loglog = plan.scenario == "almost_conservation_sweep" ||
                       plan.scenario == "commutator_sweep";
        static const std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c",
                                                        "#9467bd", "#ff7f0e", "#8c564b"};
        for (std::size_t col = 1; col < table.columns.size() && col <= palette.size();
             ++col) {
            SvgSeries series;
            series.label = table.columns[col];
            series.color = palette[col - 1];
            for (const auto& row : table.rows) series.points.emplace_back(row[0], row[col]);
            chart.series.push_back(std::move(series));
        }
        bool drawable = false;
        for (const auto& s : chart.series) {
            for (auto [x, y] : s.points) {
                if (!chart.loglog || (x > 0.0 && y > 0.0)) drawable = true;
            }
        }
        if (drawable) {
            write_svg((fs::path(plan.output_dir) / (plan.scenario + ".svg")).string(),
                      chart);
        }
    }
    return table;
}

}  // namespace nlslab
