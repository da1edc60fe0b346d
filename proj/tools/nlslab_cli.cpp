#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlslab/acceptance.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/io.hpp"
#include "nlslab/weights.hpp"

namespace {

void print_results(const std::vector<nlslab::CriterionResult>& results) {
    for (const auto& r : results) {
        std::printf("[%s] %2d %-32s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
    }
    std::printf("%s\n", nlslab::all_pass(results) ? "ALL PASS" : "FAILURES PRESENT");
}

int do_run(const std::string& plan_path, const std::string& out_override) {
    nlslab::ExperimentPlan plan =
        nlslab::ExperimentPlan::from_json_text(nlslab::read_text_file(plan_path));
    if (!out_override.empty()) plan.output_dir = out_override;
    const nlslab::ResultTable table = nlslab::run(plan);
    for (const auto& [name, value] : table.scalars) {
        std::printf("%s = %s\n", name.c_str(), nlslab::format_double(value).c_str());
    }
    for (const auto& note : table.notes) std::printf("note: %s\n", note.c_str());
    std::printf("%s: wrote artifacts to %s\n", plan.scenario.c_str(),
                plan.output_dir.c_str());
    return table.failed ? 1 : 0;
}

int do_check(const std::string& suite, const std::string& out_dir) {
    std::vector<nlslab::CriterionResult> results;
    if (suite == "all") {
        results = nlslab::run_acceptance(out_dir);
    } else if (suite == "fast") {
        results = nlslab::run_acceptance_once(out_dir, {1, 5, 6, 12});
    } else {
        std::fprintf(stderr, "unknown suite '%s' (expected all or fast)\n", suite.c_str());
        return 2;
    }
    print_results(results);
    return nlslab::all_pass(results) ? 0 : 1;
}

int do_weights_dump(double M) {
    const nlslab::WeightSpec spec = nlslab::build_weight(M);
    std::printf("r,f,fp,fpp,lap,bilap_regular\n");
    for (int i = 0; i <= 400; ++i) {
        const double r = M * std::pow(10.0, -3.0 + 5.0 * i / 400.0);
        std::printf("%s,%s,%s,%s,%s,%s\n", nlslab::format_double(r).c_str(),
                    nlslab::format_double(spec.f(r)).c_str(),
                    nlslab::format_double(spec.fp(r)).c_str(),
                    nlslab::format_double(spec.fpp(r)).c_str(),
                    nlslab::format_double(spec.lap(r)).c_str(),
                    nlslab::format_double(spec.bilap_regular(r)).c_str());
    }
    std::printf("# delta_coeff,%s\n", nlslab::format_double(spec.delta_coeff).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nlslab: pseudo-spectral diagnostics for the 2D cubic NLS"};
    app.require_subcommand(1);

    std::string plan_path, out_dir;
    auto* run_cmd = app.add_subcommand("run", "execute a JSON experiment plan");
    run_cmd->add_option("plan", plan_path, "path to plan JSON")->required();
    run_cmd->add_option("--out", out_dir, "override the plan's output directory");

    std::string suite = "all", check_dir = "acceptance_out";
    auto* check_cmd = app.add_subcommand("check", "run the acceptance suite");
    check_cmd->add_option("suite", suite, "all or fast");
    check_cmd->add_option("--out", check_dir, "artifact directory");

    std::string scenario = "conservation", sweep_dir;
    std::vector<double> n_list, s_list, t_list;
    double dt_override = 0.0;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a named scenario with defaults");
    sweep_cmd->add_option("--scenario", scenario, "scenario name")->required();
    sweep_cmd->add_option("--out", sweep_dir, "output directory");
    sweep_cmd->add_option("--N", n_list, "override N list");
    sweep_cmd->add_option("--s", s_list, "override s list");
    sweep_cmd->add_option("--T", t_list, "override T list");
    sweep_cmd->add_option("--dt", dt_override, "override time step");

    double weight_m = 1.0;
    auto* weights_cmd = app.add_subcommand("weights", "weight diagnostics");
    auto* dump_cmd = weights_cmd->add_subcommand("dump", "print the radial weight table");
    dump_cmd->add_option("--M", weight_m, "weight scale")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return do_run(plan_path, out_dir);
        if (*check_cmd) return do_check(suite, check_dir);
        if (*sweep_cmd) {
            nlslab::ExperimentPlan plan = nlslab::ExperimentPlan::defaults(scenario);
            if (!n_list.empty()) plan.N_list = n_list;
            if (!s_list.empty()) plan.s_list = s_list;
            if (!t_list.empty()) plan.T_list = t_list;
            if (dt_override > 0.0) plan.dt = dt_override;
            if (!sweep_dir.empty()) plan.output_dir = sweep_dir;
            const nlslab::ResultTable table = nlslab::run(plan);
            for (const auto& [name, value] : table.scalars) {
                std::printf("%s = %s\n", name.c_str(),
                            nlslab::format_double(value).c_str());
            }
            for (const auto& note : table.notes) std::printf("note: %s\n", note.c_str());
            return table.failed ? 1 : 0;
        }
        if (*weights_cmd && *dump_cmd) return do_weights_dump(weight_m);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
