#include "naq/integrator.hpp"

#include <cmath>
#include <iostream>

#include "naq/observables.hpp"

namespace naq {

void IntegratorConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
    if (!(t_max >= dt)) throw std::invalid_argument("IntegratorConfig: t_max must be >= dt");
    if (record_stride < 1) throw std::invalid_argument("IntegratorConfig: record_stride >= 1");
}

namespace {

struct StepWorkspace {
    ComplexMatrix k1, k2, k3, k4, stage;
    RhsWorkspace rhs_ws;
    explicit StepWorkspace(int dim)
        : k1(dim), k2(dim), k3(dim), k4(dim), stage(dim), rhs_ws(dim) {}
};

void rk4_step_into(ComplexMatrix& rho, const GeneratorContext& ctx, double dt,
                   StepWorkspace& ws) {
    const int n = rho.dim();
    rhs_into(ws.k1, rho, ctx, ws.rhs_ws);

    ws.stage = rho;
    add_scaled(ws.stage, 0.5 * dt, ws.k1);
    rhs_into(ws.k2, ws.stage, ctx, ws.rhs_ws);

    ws.stage = rho;
    add_scaled(ws.stage, 0.5 * dt, ws.k2);
    rhs_into(ws.k3, ws.stage, ctx, ws.rhs_ws);

    ws.stage = rho;
    add_scaled(ws.stage, dt, ws.k3);
    rhs_into(ws.k4, ws.stage, ctx, ws.rhs_ws);

    const double w = dt / 6.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rho(i, j) += w * (ws.k1(i, j) + 2.0 * ws.k2(i, j) + 2.0 * ws.k3(i, j) + ws.k4(i, j));
}

// In-place (rho + rho+)/2 then divide by the (real) trace.
void enforce_into(ComplexMatrix& rho) {
    const int n = rho.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const cplx v = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = v;
            rho(j, i) = std::conj(v);
        }
        rho(i, i) = cplx(rho(i, i).real(), 0.0);
    }
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-6) throw numerical_error("enforce_valid: trace collapsed below 1e-6");
    const double inv = 1.0 / tr;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rho(i, j) *= inv;
    // absorb the division roundoff into the largest diagonal entry so the
    // trace is exactly 1
    int big = 0;
    for (int i = 1; i < n; ++i)
        if (rho(i, i).real() > rho(big, big).real()) big = i;
    for (int pass = 0; pass < 4; ++pass) {
        const double defect = rho.trace().real() - 1.0;
        if (defect == 0.0) break;
        rho(big, big) -= defect;
    }
}

TrajectoryRecord record_state(double t, const ComplexMatrix& rho) {
    TrajectoryRecord r;
    r.t = t;
    r.sz1 = site_bloch(rho, 1, Axis::z);
    r.sx1 = site_bloch(rho, 1, Axis::x);
    r.zz = zz_correlation(rho);
    r.purity = purity(rho);
    r.entropy = von_neumann_entropy(rho);
    r.concurrence = concurrence(rho);
    r.min_eig = hermitian_eigenvalues(rho).front();
    return r;
}

} // namespace

DensityMatrix rk4_step(const DensityMatrix& rho, const GeneratorContext& ctx, double dt) {
    ComplexMatrix m = rho.mat;
    StepWorkspace ws(m.dim());
    rk4_step_into(m, ctx, dt, ws);
    if (!m.all_finite()) throw numerical_error("rk4_step: non-finite entries after step");
    return DensityMatrix{m};
}

DensityMatrix enforce_valid(const DensityMatrix& rho) {
    ComplexMatrix m = rho.mat;
    enforce_into(m);
    return DensityMatrix{m};
}

std::vector<TrajectoryRecord> evolve(const DensityMatrix& rho0, const GeneratorContext& ctx,
                                     const IntegratorConfig& cfg) {
    cfg.validate();
    ComplexMatrix rho = rho0.mat;
    const long n_steps = std::llround(cfg.t_max / cfg.dt);
    StepWorkspace ws(rho.dim());

    std::vector<TrajectoryRecord> traj;
    traj.reserve(static_cast<size_t>(n_steps / cfg.record_stride) + 2);
    traj.push_back(record_state(0.0, rho));

    long cp_flags = 0;
    double worst_min_eig = traj.front().min_eig;
    for (long step = 1; step <= n_steps; ++step) {
        rk4_step_into(rho, ctx, cfg.dt, ws);
        if (!rho.all_finite())
            throw numerical_error("evolve: numerical blowup at step " + std::to_string(step));
        enforce_into(rho);
        if (step % cfg.record_stride == 0 || step == n_steps) {
            traj.push_back(record_state(step * cfg.dt, rho));
            const double me = traj.back().min_eig;
            worst_min_eig = std::min(worst_min_eig, me);
            if (me < -cfg.cp_tol) ++cp_flags;
        }
    }
    if (cp_flags > 0)
        std::cerr << "[naq] CP monitor: min eigenvalue dropped below -" << cfg.cp_tol << " at "
                  << cp_flags << " recorded steps (worst " << worst_min_eig << ")\n";
    return traj;
}

} // namespace naq
