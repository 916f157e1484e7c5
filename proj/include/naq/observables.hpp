#pragma once

// Scalar diagnostics reported by the simulation: Bloch components,
// longitudinal correlation, purity, von Neumann entropy (natural log),
// Wootters concurrence, and steady-state extraction from a trajectory.

#include <vector>

#include "naq/integrator.hpp"
#include "naq/operators.hpp"
#include "naq/qlinalg.hpp"

namespace naq {

/// Tr(rho^2)
double purity(const ComplexMatrix& rho);

/// -sum lambda_i ln(lambda_i), 0 ln 0 := 0. Negative eigenvalues are
/// clipped at zero; clips beyond 1e-10 raise a warning on stderr.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Wootters concurrence of a two-qubit state. The spectrum of rho rho~ is
/// obtained from the Hermitian matrix sqrt(rho) rho~ sqrt(rho).
double concurrence(const ComplexMatrix& rho);

/// Tr(rho sigma_axis^(site))
double site_bloch(const ComplexMatrix& rho, int site, Axis axis);

/// Tr(rho sigma_z (x) sigma_z)
double zz_correlation(const ComplexMatrix& rho);

struct SteadyStateSummary {
    double c_ss;
    double c_max;
    double purity_ss;
    double entropy_ss;
    double t_evaluated;
};

/// Values at the last record with t <= t_eval; c_max over the whole
/// trajectory. Throws if the trajectory does not reach t_eval.
SteadyStateSummary steady_state_summary(const std::vector<TrajectoryRecord>& traj,
                                        double t_eval);

} // namespace naq
