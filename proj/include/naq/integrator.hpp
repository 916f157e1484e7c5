#pragma once

// Fixed-step RK4 evolution of the nonlinear master equation. Expectation
// values feeding the nonassociative term are recomputed at every substep;
// Hermiticity and trace normalization are enforced after each full step;
// positivity is monitored (never projected).

#include <vector>

#include "naq/generator.hpp"
#include "naq/qlinalg.hpp"

namespace naq {

struct IntegratorConfig {
    double dt = 0.05;
    double t_max = 4000.0;    // 200 / Gamma_+ at the default rates
    int record_stride = 20;   // samples every 1.0 time units at dt = 0.05
    double cp_tol = 1e-12;    // CP-violation alarm threshold

    void validate() const;    // dt > 0, t_max >= dt, stride >= 1
};

struct TrajectoryRecord {
    double t;
    double sz1, sx1;     // site-1 Bloch components
    double zz;           // <sigma_z sigma_z>
    double purity;
    double entropy;
    double concurrence;
    double min_eig;      // smallest eigenvalue of rho
};

/// One classic RK4 step; each k_i re-evaluates the nonlinear feedback on
/// its own intermediate state. Throws numerical_error on non-finite output.
DensityMatrix rk4_step(const DensityMatrix& rho, const GeneratorContext& ctx, double dt);

/// ((rho + rho+)/2) / Tr((rho + rho+)/2). Idempotent; no positivity
/// projection. Throws if |Tr rho| < 1e-6.
DensityMatrix enforce_valid(const DensityMatrix& rho);

/// Step with rk4 + enforce_valid, recording observables every
/// record_stride steps (plus the initial and final states). Any recorded
/// min_eig < -cp_tol is flagged on stderr but does not abort.
std::vector<TrajectoryRecord> evolve(const DensityMatrix& rho0, const GeneratorContext& ctx,
                                     const IntegratorConfig& cfg);

} // namespace naq
