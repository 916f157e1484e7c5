// Acceptance suite: runs every release criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.
//
// Paper-parameter runs: g = 0.2, Gamma_+ = 0.05, eps_+ = 0.01, J = 1,
// h = 0.25, T = 0, rho(0) = |+><+| (x) |+><+|, dt = 0.05, steady state
// at t = 200/Gamma_+ = 4000.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "naq/experiment.hpp"
#include "naq/sw_phase_space.hpp"
#include "support/liouville_oracle.hpp"
#include "support/test_support.hpp"

using namespace naq;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    ExperimentConfig cfg;  // defaults are the paper parameters
    cfg.workers = 4;
    cfg.output_dir = "acceptance_out";

    // ---- paper-parameter kappa sweep (criteria 1-5, 7) --------------------
    const auto t_single0 = std::chrono::steady_clock::now();
    const auto traj0 = run_trajectory(cfg, 0.0, 0.25);
    const double t_traj = wall_seconds(t_single0);

    std::vector<SweepRow> rows(cfg.kappa_list.size());
    {
        ExperimentConfig sweep_cfg = cfg;
        sweep_cfg.output_dir = cfg.output_dir;
        const auto res = run_sweep_kappa(sweep_cfg);
        rows = res.rows;
    }
    const auto row = [&](double kappa) {
        for (const auto& r : rows)
            if (r.kappa == kappa) return r;
        throw std::logic_error("kappa row missing");
    };

    // 1. steady-state concurrence endpoints + runtime target
    {
        const double c0 = row(0.0).c_ss, c200 = row(200.0).c_ss;
        const bool pass = std::abs(c0 - 0.306) <= 0.01 && std::abs(c200 - 0.125) <= 0.01 &&
                          t_traj < 10.0;
        report(1, pass,
               "C_ss(kappa=0) = " + fmt(c0) + " (0.306 +- 0.01), C_ss(200) = " + fmt(c200) +
                   " (0.125 +- 0.01), trajectory wall time " + fmt(t_traj) + " s (< 10 s)");
    }

    // 2. suppression ratio
    {
        const double supp = (row(0.0).c_ss - row(200.0).c_ss) / row(0.0).c_ss;
        report(2, std::abs(supp - 0.59) <= 0.03,
               "suppression (C_ss(0)-C_ss(200))/C_ss(0) = " + fmt(supp) + " (0.59 +- 0.03)");
    }

    // 3. purity and entropy endpoints (natural-log base)
    {
        const double p0 = row(0.0).purity_ss, p200 = row(200.0).purity_ss;
        const double s0 = row(0.0).entropy_ss, s200 = row(200.0).entropy_ss;
        const bool pass = std::abs(p0 - 0.742) <= 0.02 && std::abs(p200 - 0.547) <= 0.02 &&
                          std::abs(s0 - 0.533) <= 0.02 && std::abs(s200 - 0.890) <= 0.02;
        report(3, pass,
               "purity " + fmt(p0) + "/" + fmt(p200) + " (0.742/0.547 +- 0.02), entropy " +
                   fmt(s0) + "/" + fmt(s200) + " (0.533/0.890 +- 0.02, ln)");
    }

    // 4. monotonicity across kappa
    {
        bool pass = true;
        for (size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].c_ss > rows[i - 1].c_ss + 1e-12) pass = false;
            if (rows[i].entropy_ss < rows[i - 1].entropy_ss - 1e-12) pass = false;
        }
        report(4, pass, "C_ss non-increasing and entropy_ss non-decreasing over kappa "
                        "{0,50,100,150,200}");
    }

    // 5. transient invariance of C_max
    {
        double cmax_min = rows[0].c_max, cmax_max = rows[0].c_max;
        for (const auto& r : rows) {
            cmax_min = std::min(cmax_min, r.c_max);
            cmax_max = std::max(cmax_max, r.c_max);
        }
        const double spread = (cmax_max - cmax_min) / cmax_max;
        report(5, spread <= 0.002,
               "relative spread of C_max over kappa = " + fmt(spread) + " (<= 0.002)");
    }

    // 7. complete positivity on every paper-parameter run
    {
        double worst = 0.0;
        for (const auto& r : rows) worst = std::min(worst, r.min_eig_global);
        for (const auto& rec : traj0) worst = std::min(worst, rec.min_eig);
        report(7, worst >= -1e-12,
               "min eigenvalue over all recorded steps = " + fmt(worst) + " (>= -1e-12)");
    }

    // 6. field scan: optimum location, vanishing entanglement, runtime
    {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentConfig scan_cfg = cfg;
        const auto scan = run_sweep_field(scan_cfg);
        const double wall4 = wall_seconds(t0);
        const double est_single = t_traj * static_cast<double>(scan.grid.size()) *
                                  static_cast<double>(scan.kappas.size());

        bool pass = std::abs(scan.argmax[0] - 0.25) <= 0.025 + 1e-9;
        double worst_tail = 0.0;
        for (size_t ih = 0; ih < scan.grid.size(); ++ih)
            if (scan.grid[ih] >= 0.5 - 1e-12)
                for (size_t ik = 0; ik < scan.kappas.size(); ++ik)
                    worst_tail = std::max(worst_tail, scan.c_ss[ih][ik]);
        if (worst_tail >= 1e-3) pass = false;
        if (wall4 >= 240.0 || est_single >= 900.0) pass = false;
        report(6, pass,
               "argmax_h C_ss(kappa=0) = " + fmt(scan.argmax[0]) +
                   " (0.25 +- one grid step), max C_ss at h/J >= 0.5 = " + fmt(worst_tail) +
                   " (< 1e-3), 41x5 scan " + fmt(wall4) + " s with 4 workers (< 240 s), est. " +
                   fmt(est_single) + " s single-threaded (< 900 s)");
    }

    // 8. kappa = 0 oracle equivalence and fourth-order halving
    {
        SystemParams p = cfg.system;
        p.kappa = {0.0, 0.0};
        const GeneratorContext ctx = GeneratorContext::from_params(p);
        const naqtest::LiouvillePropagator oracle(p);
        const DensityMatrix rho0 = initial_plus_product();
        bool pass = true;
        double worst_dev = 0.0, worst_ratio_err = 0.0;
        for (double t : {1.0, 10.0, 100.0}) {
            const ComplexMatrix exact = oracle.at(rho0.mat, t);
            DensityMatrix fine = rho0, coarse = rho0;
            const long n_fine = std::llround(t / 0.025);
            for (long s = 0; s < n_fine; ++s)
                fine = enforce_valid(rk4_step(fine, ctx, 0.025));
            const long n_coarse = std::llround(t / 0.05);
            for (long s = 0; s < n_coarse; ++s)
                coarse = enforce_valid(rk4_step(coarse, ctx, 0.05));
            const double dev_f = max_abs_diff(fine.mat, exact);
            const double dev_c = max_abs_diff(coarse.mat, exact);
            worst_dev = std::max(worst_dev, dev_f);
            const double ratio = dev_c / dev_f;
            worst_ratio_err = std::max(worst_ratio_err, std::abs(ratio - 16.0));
            if (dev_f > 1e-6 || ratio < 12.0 || ratio > 20.0) pass = false;
        }
        report(8, pass,
               "entrywise deviation from the 16x16 eigendecomposition oracle = " +
                   fmt(worst_dev) + " at dt=0.025 (<= 1e-6); halving ratio within 16 +- " +
                   fmt(worst_ratio_err) + " (in [12,20])");
    }

    // 9. closed-form associators vs the symbol-level evaluator.
    // Operator-lift convention: the closed forms equal -i times the symbol
    // associator (the constant under which the generator stays
    // Hermiticity-preserving).
    {
        naqtest::Rng rng(cfg.seed);
        SystemParams p = cfg.system;
        p.kappa = {150.0, 90.0};
        const TwistField chi = TwistField::ising_aligned(p.kappa[0], p.kappa[1]);
        const cplx lift(0.0, -1.0);
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const auto r1 = rng.bloch_vector(), r2 = rng.bloch_vector();
            const ComplexMatrix rho = kron(rng.qubit_state(r1), rng.qubit_state(r2));
            const auto closed = closed_form_associators(rho, p);
            const BlochPoint n1(rng.unit_vector()), n2(rng.unit_vector());
            for (int site = 1; site <= 2; ++site) {
                const auto [gs, gsd] = jump_symbol_gradients(p.coupling(site), site);
                const auto& rb = (site == 1) ? r1 : r2;
                const SymbolGradient grho{
                    site, {cplx(rb[0] / 4.0), cplx(rb[1] / 4.0), cplx(rb[2] / 4.0)}};
                const auto& nn = (site == 1) ? n1 : n2;
                const std::array<double, 3> spt = {std::sqrt(3.0) * nn.n[0],
                                                   std::sqrt(3.0) * nn.n[1],
                                                   std::sqrt(3.0) * nn.n[2]};
                const std::array<std::array<const SymbolGradient*, 3>, 6> triples = {{
                    {&gsd, &gs, &grho},
                    {&gs, &gsd, &grho},
                    {&gs, &grho, &gsd},
                    {&gsd, &grho, &gs},
                    {&grho, &gs, &gsd},
                    {&grho, &gsd, &gs},
                }};
                for (int j = 0; j < 6; ++j) {
                    const cplx sym = lift * associator(*triples[j][0], *triples[j][1],
                                                       *triples[j][2], chi, spt);
                    worst = std::max(worst, std::abs(sym - symbol(closed[site - 1][j], n1, n2)));
                }
            }
        }
        report(9, worst <= 1e-12,
               "closed-form A1..A6 vs symbol evaluator on 100 product states: max deviation " +
                   fmt(worst) + " (<= 1e-12)");
    }

    // 10. jacobiator property suite
    {
        const std::array<double, 3> pt{0.3, -0.2, 0.5};
        const VectorField radial = [](const std::array<double, 3>& x) { return x; };
        const VectorField divfree = [](const std::array<double, 3>& x) {
            return std::array<double, 3>{x[1], x[2], x[0]};
        };
        const VectorField mixed = [](const std::array<double, 3>& x) {
            return std::array<double, 3>{x[0] * x[1], x[1] * x[2], x[2] * x[0]};
        };
        const double e_rad = std::abs(monopole_jacobiator(radial, 1.0, pt, 1, 2, 3) - 3.0);
        const double e_div = std::abs(monopole_jacobiator(divfree, 1.0, pt, 1, 2, 3));
        const double e_mix =
            std::abs(monopole_jacobiator(mixed, 1.0, pt, 1, 2, 3) - (pt[0] + pt[1] + pt[2]));
        const bool pass = e_rad <= 1e-6 && e_mix <= 1e-6 && e_div <= 1e-8;
        report(10, pass,
               "jacobiator errors: radial " + fmt(e_rad) + ", mixed " + fmt(e_mix) +
                   " (<= 1e-6), divergence-free " + fmt(e_div) + " (<= 1e-8)");
    }

    // 11. structural invariants on 1000 random valid states
    {
        naqtest::Rng rng(cfg.seed + 1);
        SystemParams p = cfg.system;
        p.kappa = {170.0, 35.0};
        const GeneratorContext ctx = GeneratorContext::from_params(p);
        SystemParams p2 = p;
        p2.kappa = {2.0 * p.kappa[0], 2.0 * p.kappa[1]};
        const GeneratorContext ctx2 = GeneratorContext::from_params(p2);
        double worst_tr = 0.0, worst_h = 0.0, worst_hom = 0.0, worst_gen = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const ComplexMatrix rho = rng.density(4);
            const ComplexMatrix r = rhs(rho, ctx);
            worst_tr = std::max(worst_tr, std::abs(r.trace()));
            worst_h = std::max(worst_h, r.hermiticity_residual());
            ComplexMatrix doubled = feedback(rho, ctx);
            doubled *= 2.0;
            worst_hom = std::max(worst_hom, max_abs_diff(feedback(rho, ctx2), doubled));
            worst_gen = std::max(worst_gen, max_abs_diff(general_linear_generator(rho, ctx), r));
        }
        const bool pass = worst_tr <= 1e-13 && worst_h <= 1e-13 && worst_hom == 0.0 &&
                          worst_gen <= 1e-14;
        report(11, pass,
               "1000 random states: |Tr rhs| = " + fmt(worst_tr) + " (<= 1e-13), herm = " +
                   fmt(worst_h) + " (<= 1e-13), kappa-homogeneity defect = " + fmt(worst_hom) +
                   " (exact), general-vs-rhs = " + fmt(worst_gen) + " (<= 1e-14)");
    }

    // 12. Bohr decomposition of the embedded jump operators
    {
        SystemParams p = cfg.system;  // J = 1, h = 0.25
        const ComplexMatrix h = build_tfim(p);
        double worst = 0.0;
        for (int site : {1, 2}) {
            const ComplexMatrix s = embed(sigma_minus(), site);
            ComplexMatrix sum(4);
            for (const auto& c : bohr_decompose(h, s)) {
                sum += c.op;
                ComplexMatrix comm = h * c.op - c.op * h;
                add_scaled(comm, c.omega, c.op);
                worst = std::max(worst, comm.max_abs());
            }
            worst = std::max(worst, max_abs_diff(sum, s));
        }
        report(12, worst <= 1e-10,
               "sum_w S(w) = S and [H, S(w)] = -w S(w): residual " + fmt(worst) + " (<= 1e-10)");
    }

    if (failures == 0)
        std::printf("acceptance: all 12 criteria pass\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
