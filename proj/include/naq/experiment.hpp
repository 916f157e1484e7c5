#pragma once

// Experiment orchestration: single runs, kappa sweeps, transverse-field
// scans, the verification suite, CSV emission and gnuplot companions.

#include <string>
#include <vector>

#include "naq/config.hpp"
#include "naq/observables.hpp"

namespace naq {

struct SweepRow {
    double kappa;
    double lambda_over_gamma;  // (g^2/16)(eps_+/Gamma_+) kappa, site-1 parameters
    double c_ss;
    double c_max;
    double purity_ss;
    double entropy_ss;
    double min_eig_global;
};

struct SimulateResult {
    std::vector<double> kappas;
    std::vector<std::vector<TrajectoryRecord>> trajectories;  // one per kappa
    std::vector<std::string> files;
};

struct SweepKappaResult {
    std::vector<SweepRow> rows;  // ordered by kappa
    std::string file;
};

struct FieldScanResult {
    std::vector<double> grid;    // h/J values
    std::vector<double> kappas;
    std::vector<std::vector<double>> c_ss;  // [grid index][kappa index]
    std::vector<double> argmax;  // per kappa: grid value maximizing c_ss
    std::string file;
};

struct VerifyCheck {
    std::string name;
    bool pass;
    double residual;
    double threshold;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
    std::string file;
};

/// Run a single trajectory at the config's system parameters with both
/// kappas replaced by `kappa` and the transverse fields by h_over_j * J.
std::vector<TrajectoryRecord> run_trajectory(const ExperimentConfig& cfg, double kappa,
                                             double h_over_j);

/// One trajectory CSV per kappa in cfg.kappa_list
/// (header t,sz1,sx1,zz,purity,entropy,concurrence,min_eig).
SimulateResult run_simulate(const ExperimentConfig& cfg);

/// One SweepRow per kappa, ordered by kappa (Fig. 4(d) data).
SweepKappaResult run_sweep_kappa(const ExperimentConfig& cfg);

/// Steady-state concurrence over field_grid x kappa_list (Fig. 2 data);
/// the CSV ends with an argmax footer row per kappa.
FieldScanResult run_sweep_field(const ExperimentConfig& cfg);

/// Property suites of all modules; writes verify_report.csv and returns
/// the machine-readable report.
VerifyReport run_verify(const ExperimentConfig& cfg);

/// Companion gnuplot scripts referencing the CSV contracts.
std::vector<std::string> emit_plots(const ExperimentConfig& cfg);

/// Entropy-base note and echoed config, next to the CSVs.
std::string write_metadata(const ExperimentConfig& cfg);

} // namespace naq
