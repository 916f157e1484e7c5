#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "naq/integrator.hpp"
#include "naq/observables.hpp"
#include "support/liouville_oracle.hpp"
#include "support/test_support.hpp"

using namespace naq;

namespace {

SystemParams paper_params(double kappa = 0.0) {
    SystemParams p;
    p.kappa = {kappa, kappa};
    return p;
}

DensityMatrix march(DensityMatrix rho, const GeneratorContext& ctx, double dt, long steps) {
    for (long s = 0; s < steps; ++s) rho = enforce_valid(rk4_step(rho, ctx, dt));
    return rho;
}

} // namespace

TEST_CASE("closed-system step conserves purity to O(dt^5)") {
    SystemParams p = paper_params(0.0);
    p.gamma_plus = {0.0, 0.0};
    p.h1 = p.h2 = 0.0;
    const GeneratorContext ctx = GeneratorContext::from_params(p);

    naqtest::Rng rng;
    const DensityMatrix rho{rng.density(4)};
    const double p0 = purity(rho.mat);
    const DensityMatrix rho1 = rk4_step(rho, ctx, 0.05);
    CHECK(std::abs(purity(rho1.mat) - p0) < 1e-7);
}

TEST_CASE("first substep is kappa-blind from the symmetric start, later ones are not") {
    const GeneratorContext ctx0 = GeneratorContext::from_params(paper_params(0.0));
    const GeneratorContext ctx200 = GeneratorContext::from_params(paper_params(200.0));
    const ComplexMatrix rho0 = initial_plus_product().mat;
    const double dt = 0.05;

    // k1 sees r_z = 0: identical between kappa = 0 and kappa = 200
    const ComplexMatrix k1_a = rhs(rho0, ctx0);
    const ComplexMatrix k1_b = rhs(rho0, ctx200);
    CHECK(max_abs_diff(k1_a, k1_b) == 0.0);

    // the half-step state has r_z != 0, so k2 differs
    ComplexMatrix stage_a = rho0, stage_b = rho0;
    add_scaled(stage_a, 0.5 * dt, k1_a);
    add_scaled(stage_b, 0.5 * dt, k1_b);
    const ComplexMatrix k2_a = rhs(stage_a, ctx0);
    const ComplexMatrix k2_b = rhs(stage_b, ctx200);
    CHECK(max_abs_diff(k2_a, k2_b) > 1e-9);

    // and one full step already separates the trajectories
    const DensityMatrix s_a = rk4_step(DensityMatrix{rho0}, ctx0, dt);
    const DensityMatrix s_b = rk4_step(DensityMatrix{rho0}, ctx200, dt);
    CHECK(max_abs_diff(s_a.mat, s_b.mat) > 1e-10);
}

TEST_CASE("enforce_valid") {
    naqtest::Rng rng;
    const DensityMatrix rho{rng.density(4)};

    SUBCASE("idempotent on valid states") {
        const DensityMatrix once = enforce_valid(rho);
        const DensityMatrix twice = enforce_valid(once);
        CHECK(max_abs_diff(once.mat, twice.mat) == 0.0);
        CHECK(max_abs_diff(once.mat, rho.mat) < 1e-15);
    }
    SUBCASE("strips non-Hermitian noise") {
        ComplexMatrix noisy = rho.mat;
        noisy(0, 1) += cplx(0.0, 1e-10);
        const DensityMatrix fixed = enforce_valid(DensityMatrix{noisy});
        CHECK(fixed.mat.hermiticity_residual() == 0.0);
        CHECK(fixed.mat.trace() == cplx(1.0));
    }
    SUBCASE("renormalizes a scaled state exactly") {
        ComplexMatrix scaled = rho.mat;
        scaled *= 1.001;
        const DensityMatrix fixed = enforce_valid(DensityMatrix{scaled});
        CHECK(fixed.mat.trace() == cplx(1.0));
        CHECK(max_abs_diff(fixed.mat, rho.mat) < 1e-14);
    }
    SUBCASE("collapsed trace is an error") {
        ComplexMatrix tiny = rho.mat;
        tiny *= 1e-8;
        CHECK_THROWS_AS(enforce_valid(DensityMatrix{tiny}), numerical_error);
    }
}

TEST_CASE("stationary Ising eigenstate stays put") {
    SystemParams p = paper_params(0.0);
    p.gamma_plus = {0.0, 0.0};
    p.h1 = p.h2 = 0.0;
    const GeneratorContext ctx = GeneratorContext::from_params(p);
    ComplexMatrix rho0(4);
    rho0(0, 0) = 1.0;  // |00><00|

    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_max = 5.0;
    cfg.record_stride = 10;
    const auto traj = evolve(DensityMatrix{rho0}, ctx, cfg);
    REQUIRE(traj.size() > 2);
    for (const auto& r : traj) {
        CHECK(r.sz1 == traj.front().sz1);
        CHECK(r.zz == traj.front().zz);
        CHECK(r.purity == traj.front().purity);
        CHECK(r.concurrence == traj.front().concurrence);
    }
}

TEST_CASE("kappa = 0 trajectory matches the Liouvillian eigendecomposition oracle") {
    const SystemParams p = paper_params(0.0);
    const GeneratorContext ctx = GeneratorContext::from_params(p);
    const naqtest::LiouvillePropagator oracle(p);
    const DensityMatrix rho0 = initial_plus_product();

    for (double t : {1.0, 10.0, 100.0}) {
        const ComplexMatrix exact = oracle.at(rho0.mat, t);

        const DensityMatrix fine = march(rho0, ctx, 0.025, std::llround(t / 0.025));
        const double dev_fine = max_abs_diff(fine.mat, exact);
        CHECK(dev_fine <= 1e-6);

        const DensityMatrix coarse = march(rho0, ctx, 0.05, std::llround(t / 0.05));
        const double dev_coarse = max_abs_diff(coarse.mat, exact);
        CHECK(dev_coarse <= 5e-6);  // RK4 phase error at dt = 0.05

        // fourth order: halving dt cuts the deviation by ~16
        const double ratio = dev_coarse / dev_fine;
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("nonlinear step-halving self-consistency at kappa = 200") {
    const GeneratorContext ctx = GeneratorContext::from_params(paper_params(200.0));
    const DensityMatrix rho0 = initial_plus_product();
    std::array<double, 3> sz{};
    const std::array<double, 3> dts{0.2, 0.1, 0.05};
    for (int i = 0; i < 3; ++i) {
        const DensityMatrix out = march(rho0, ctx, dts[i], std::llround(10.0 / dts[i]));
        sz[i] = site_bloch(out.mat, 1, Axis::z);
    }
    const double ratio = std::abs(sz[0] - sz[1]) / std::abs(sz[1] - sz[2]);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("evolve records, CP monitor, and validity invariants") {
    const GeneratorContext ctx = GeneratorContext::from_params(paper_params(200.0));
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    cfg.t_max = 50.0;
    cfg.record_stride = 20;
    const auto traj = evolve(initial_plus_product(), ctx, cfg);

    REQUIRE(traj.size() == 51);  // t = 0, 1, ..., 50
    CHECK(traj.front().t == 0.0);
    CHECK(traj.back().t == doctest::Approx(50.0).epsilon(1e-12));
    for (const auto& r : traj) {
        CHECK(r.purity > 0.0);
        CHECK(r.purity <= 1.0 + 1e-9);
        CHECK(r.concurrence >= 0.0);
        CHECK(r.concurrence <= 1.0);
        CHECK(r.entropy >= -1e-12);
        CHECK(r.min_eig >= -1e-12);
    }
}

TEST_CASE("numerical blowup raises an error naming the step") {
    const GeneratorContext ctx = GeneratorContext::from_params(paper_params(0.0));
    IntegratorConfig cfg;
    cfg.dt = 100.0;  // wildly unstable for RK4
    cfg.t_max = 10000.0;
    cfg.record_stride = 1;
    CHECK_THROWS_AS(evolve(initial_plus_product(), ctx, cfg), numerical_error);
    try {
        evolve(initial_plus_product(), ctx, cfg);
    } catch (const numerical_error& e) {
        CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
}

TEST_CASE("config validation") {
    IntegratorConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.dt = 0.1;
    cfg.t_max = 0.05;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.t_max = 10.0;
    cfg.record_stride = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
