// naqsim: simulate | sweep-kappa | sweep-field | verify | emit-plots
//
// Exit codes: 0 success, 1 config/argument error, 2 numerical failure,
// 3 verification failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "naq/experiment.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key=value configuration file");
    cmd->add_option("--out", opt.out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--set", opt.overrides, "config override key=value (repeatable)");
    cmd->add_option("--workers", opt.workers, "worker threads for sweeps");
}

naq::ExperimentConfig build_config(const CommonOptions& opt, naq::RunMode mode) {
    naq::ExperimentConfig cfg;
    if (!opt.config_path.empty()) cfg = naq::load_config_file(opt.config_path);
    for (const std::string& kv : opt.overrides) naq::apply_override(cfg, kv);
    if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
    if (opt.workers > 0) cfg.workers = opt.workers;
    cfg.mode = mode;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonassociativity-corrected two-qubit TFIM master-equation simulator"};
    app.require_subcommand(1);

    CommonOptions opt;
    CLI::App* simulate = app.add_subcommand("simulate", "trajectory CSVs, one per kappa");
    CLI::App* sweep_kappa = app.add_subcommand("sweep-kappa", "steady-state summary per kappa");
    CLI::App* sweep_field =
        app.add_subcommand("sweep-field", "steady-state concurrence over the h/J grid");
    CLI::App* verify = app.add_subcommand("verify", "run the property-suite release gate");
    CLI::App* emit_plots =
        app.add_subcommand("emit-plots", "write gnuplot scripts referencing the CSVs");
    for (CLI::App* cmd : {simulate, sweep_kappa, sweep_field, verify, emit_plots})
        add_common(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) {
            const auto cfg = build_config(opt, naq::RunMode::simulate);
            const auto res = naq::run_simulate(cfg);
            for (const auto& f : res.files) std::cout << f << "\n";
        } else if (sweep_kappa->parsed()) {
            const auto cfg = build_config(opt, naq::RunMode::sweep_kappa);
            const auto res = naq::run_sweep_kappa(cfg);
            std::cout << res.file << "\n";
        } else if (sweep_field->parsed()) {
            const auto cfg = build_config(opt, naq::RunMode::sweep_field);
            const auto res = naq::run_sweep_field(cfg);
            std::cout << res.file << "\n";
        } else if (verify->parsed()) {
            const auto cfg = build_config(opt, naq::RunMode::verify);
            const auto report = naq::run_verify(cfg);
            for (const auto& c : report.checks)
                std::printf("%-55s %s  residual=%.3e\n", c.name.c_str(),
                            c.pass ? "pass" : "FAIL", c.residual);
            if (!report.all_pass()) {
                std::cerr << "verification FAILED\n";
                return 3;
            }
            std::cout << "all properties pass (" << report.checks.size() << " checks)\n";
        } else if (emit_plots->parsed()) {
            const auto cfg = build_config(opt, naq::RunMode::simulate);
            for (const auto& f : naq::emit_plots(cfg)) std::cout << f << "\n";
        }
    } catch (const naq::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
