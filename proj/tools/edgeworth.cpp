#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "edgeworth/config.hpp"
#include "edgeworth/oracle.hpp"
#include "edgeworth/plot.hpp"

namespace {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const edgeworth::ConfigError*>(&e)) return 2;
    if (dynamic_cast<const edgeworth::ResolveError*>(&e)) return 3;
    if (dynamic_cast<const edgeworth::NumericError*>(&e)) return 4;
    return 1;
}

struct Overrides {
    std::string config_path;
    std::string out;
    std::int64_t seed = -1;
    int threads = -1;
};

edgeworth::ExperimentConfig load_with_overrides(const Overrides& ov) {
    edgeworth::ExperimentConfig config = edgeworth::load_config(ov.config_path);
    if (ov.seed >= 0) config.seed = static_cast<std::uint64_t>(ov.seed);
    if (ov.threads >= 0) config.threads = ov.threads;
    if (!ov.out.empty()) config.output = ov.out;
    return config;
}

void add_overrides(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("config", ov.config_path, "JSON experiment config")->required();
    cmd->add_option("--seed", ov.seed, "override the config seed");
    cmd->add_option("--threads", ov.threads, "override the worker thread count");
    cmd->add_option("--out", ov.out, "override the output path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edgeworth expansion engine for Ito integral discretization error"};
    app.require_subcommand(1);

    Overrides run_ov, clt_ov;
    CLI::App* run_cmd = app.add_subcommand(
        "run", "run a convergence experiment and write the report CSV");
    add_overrides(run_cmd, run_ov);

    CLI::App* clt_cmd = app.add_subcommand(
        "check-clt", "run the stable-CLT variance check and write its CSV");
    add_overrides(clt_cmd, clt_ov);

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run the fast invariant suite");

    std::string plot_in, plot_out;
    CLI::App* plot_cmd =
        app.add_subcommand("plot", "render a report CSV as an SVG chart");
    plot_cmd->add_option("report", plot_in, "report CSV path")->required();
    plot_cmd->add_option("svg", plot_out, "output SVG path")->required();

    std::string fixtures_out = "fixtures.json";
    CLI::App* fixtures_cmd = app.add_subcommand(
        "fixtures", "regenerate the oracle fixtures file");
    fixtures_cmd->add_option("--out", fixtures_out, "output fixtures path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            edgeworth::run_experiment(load_with_overrides(run_ov));
        } else if (clt_cmd->parsed()) {
            auto config = load_with_overrides(clt_ov);
            if (clt_ov.out.empty() && config.output == "report.csv")
                config.output = "clt_check.csv";
            edgeworth::run_clt_experiment(config);
        } else if (selftest_cmd->parsed()) {
            return edgeworth::selftest(std::cout);
        } else if (plot_cmd->parsed()) {
            edgeworth::plot_report_csv(plot_in, plot_out);
        } else if (fixtures_cmd->parsed()) {
            edgeworth::write_fixtures(fixtures_out, edgeworth::compute_fixtures());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
