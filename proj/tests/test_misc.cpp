#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "nlslab/experiments.hpp"
#include "nlslab/fit.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/io.hpp"
#include "nlslab/onedim.hpp"
#include "nlslab/rng.hpp"
#include "nlslab/strichartz.hpp"
#include "nlslab/svg.hpp"

using namespace nlslab;

namespace fs = std::filesystem;

TEST_CASE("log-log fit recovers an exact power law and drops bad points") {
    std::vector<std::pair<double, double>> pts{{2.0, 8.0}, {4.0, 1.0}, {8.0, 0.125}};
    const SlopeFit fit = fit_loglog_slope(pts);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(fit.residual <= 1e-12);
    CHECK(fit.points_used == 3);

    pts.push_back({16.0, 0.0});
    const SlopeFit dropped = fit_loglog_slope(pts);
    CHECK(dropped.points_used == 3);
    CHECK_FALSE(dropped.note.empty());

    CHECK_THROWS(fit_loglog_slope({{1.0, 1.0}, {2.0, 2.0}}));
}

TEST_CASE("format_double is canonical and round-trips") {
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.5) == "0.5");
    for (double v : {1.0 / 3.0, 1e-17, -2.5e300, 123456.789}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("field and trajectory archives round-trip bit-exactly") {
    const fs::path dir = fs::temp_directory_path() / "nlslab_io_test";
    fs::create_directories(dir);
    const Grid2D g(16, 2.5);
    Rng rng(77);
    Field u(g);
    for (cplx& z : u.values) z = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

    write_field((dir / "f.nlsf").string(), u);
    const Field back = read_field((dir / "f.nlsf").string());
    CHECK(back.grid.n == g.n);
    CHECK(back.grid.box_length == g.box_length);
    CHECK(back.values == u.values);

    Trajectory traj;
    traj.config.dt = 0.5;
    traj.config.snapshot_stride = 2;
    traj.config.grid = g;
    traj.times = {0.0, 1.0};
    traj.fields = {u, u};
    write_trajectory((dir / "traj").string(), traj);
    const Trajectory back_t = read_trajectory((dir / "traj").string());
    CHECK(back_t.times == traj.times);
    CHECK(back_t.fields.size() == 2);
    CHECK(back_t.fields[1].values == u.values);
    fs::remove_all(dir);
}

TEST_CASE("csv output is deterministic") {
    CsvTable t;
    t.header = {"a", "b"};
    t.add_row(std::vector<double>{1.0, -0.0});
    const fs::path p = fs::temp_directory_path() / "nlslab_csv_test.csv";
    write_csv(p.string(), t);
    CHECK(read_text_file(p.string()) == "a,b\n1,0\n");
    fs::remove(p);
}

TEST_CASE("svg rendering emits polylines and rejects empty charts") {
    SvgChart chart;
    chart.title = "demo";
    chart.series.push_back({"s", "#1f77b4", {{0.0, 0.0}, {1.0, 2.0}}});
    const std::string svg = render_svg(chart);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    SvgChart empty;
    CHECK_THROWS(render_svg(empty));
}

TEST_CASE("seeded rng is reproducible and in range") {
    Rng a(7), b(7);
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("globalization arithmetic landmarks") {
    const Globalization g = globalization_calc(0.5, 16.0, 1.0, 1.0, 0.1);
    CHECK(g.exponent == 0.75);
    CHECK(g.lambda == doctest::Approx(16.0).epsilon(1e-14));
    const double expected_L =
        16.0 * 4.0 * std::cbrt(256.0) / 0.1;  // (2K)^4 sqrt(N) (lambda^2 T0)^{1/3} / mu0
    CHECK(g.L == doctest::Approx(expected_L).epsilon(1e-13));

    CHECK_FALSE(globalization_calc(0.4, 16.0, 1.0, 1.0, 0.1).admissible);
    const double th1 = admissibility_threshold(0.45, 1.0, 1.0, 0.1);
    const double th8 = admissibility_threshold(0.45, 8.0, 1.0, 0.1);
    CHECK(th8 >= th1);
}

TEST_CASE("experiment plans validate and round-trip through JSON") {
    const ExperimentPlan plan = ExperimentPlan::defaults("commutator_sweep");
    const ExperimentPlan back = ExperimentPlan::from_json_text(plan.to_json_text());
    CHECK(back.scenario == plan.scenario);
    CHECK(back.N_list == plan.N_list);
    CHECK(back.dt == plan.dt);
    CHECK(back.chirp == plan.chirp);
    CHECK(back.to_json_text() == plan.to_json_text());

    ExperimentPlan bad = plan;
    bad.scenario = "nope";
    CHECK_THROWS(bad.validate());
    bad = plan;
    bad.dt = -1.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("linear trajectory reproduces free Gaussian spreading") {
    const Grid2D g(128, 32.0);
    const double A = 1.0, w = 2.0;
    const Field u0 = gaussian_data(g, A, w, {16.0, 16.0}, {0.0, 0.0});
    const Trajectory traj = linear_trajectory(u0, 0.25, 1.0);
    const int ic = 64;  // x = 16 exactly
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        const double expected =
            A * w * w / std::sqrt(w * w * w * w + 4.0 * t * t);
        CHECK(std::abs(traj.fields[k].at(ic, ic)) ==
              doctest::Approx(expected).epsilon(1e-8));
    }
    CHECK(mass(traj.fields.back()) == doctest::Approx(mass(u0)).epsilon(1e-12));
}

TEST_CASE("for_indices covers every index under a thread cap") {
    setenv("NLSLAB_THREADS", "3", 1);
    CHECK(thread_cap() == 3);
    std::vector<double> out(257, 0.0);
    for_indices(out.size(), [&](std::size_t i) { out[i] = double(i) * double(i); });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == double(i) * double(i));
    unsetenv("NLSLAB_THREADS");
}

TEST_CASE("1d splitting is exact on plane waves and conserves mass") {
    const onedim::Grid1D g(64, 1.0);
    const double A = 0.5, dt = 1e-3;
    onedim::Field1D u0(g);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < g.n; ++i) {
        const double ph = two_pi * 3.0 * g.coord(i);
        u0.values[i] = A * cplx{std::cos(ph), std::sin(ph)};
    }
    const onedim::Field1D u1 = onedim::strang_step(u0, dt);
    const double omega = two_pi * two_pi * 9.0 + A * A;
    const cplx phase{std::cos(-omega * dt), std::sin(-omega * dt)};
    for (int i = 0; i < g.n; ++i) {
        CHECK(std::abs(u1.values[i] - u0.values[i] * phase) <= 1e-13);
    }

    const onedim::Grid1D g2(256, 32.0);
    const onedim::Field1D v0 = gaussian_data_1d(g2, 1.0, 2.0, 16.0);
    const onedim::Trajectory1D traj = onedim::evolve(v0, 1e-3, 0.1, 25);
    const double m0 = onedim::mass(traj.fields.front());
    for (const auto& f : traj.fields) {
        CHECK(std::abs(onedim::mass(f) - m0) / m0 <= 1e-13);
    }
}

TEST_CASE("strichartz norm reduces to T^{1/q} times a fixed spatial norm") {
    const Grid2D g(32, 4.0);
    const Field u = gaussian_data(g, 1.0, 0.5, {2.0, 2.0}, {0.0, 0.0});
    Trajectory traj;
    traj.config.grid = g;
    traj.config.dt = 0.5;
    traj.times = {0.0, 0.5, 1.0};
    traj.fields = {u, u, u};
    const AdmissiblePair pair(4.0, 4.0);
    CHECK(strichartz_norm(traj, pair) ==
          doctest::Approx(lebesgue_norm(u, 4.0)).epsilon(1e-12));
    CHECK_THROWS(AdmissiblePair(2.0, std::numeric_limits<double>::infinity()));
}
