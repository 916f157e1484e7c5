#include "naq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "naq/bath.hpp"
#include "naq/sw_phase_space.hpp"

namespace naq {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::invalid_argument("cannot create output directory '" + dir + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + path + "'");
    f << content;
    if (!f) throw std::invalid_argument("write failed for '" + path + "'");
}

std::string kappa_tag(double kappa) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", kappa);
    return buf;
}

// Deterministic worker pool: job i writes only slot i of its output.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(workers, n);
    pool.reserve(count);
    for (int w = 0; w < count; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

constexpr char kTrajectoryHeader[] = "t,sz1,sx1,zz,purity,entropy,concurrence,min_eig";
constexpr char kSweepHeader[] =
    "kappa,lambda_over_gamma,c_ss,c_max,purity_ss,entropy_ss,min_eig_global";

double lambda_over_gamma(const SystemParams& p, double kappa) {
    return (p.g1 * p.g1 / 16.0) * (p.eps_plus[0] / p.gamma_plus[0]) * kappa;
}

} // namespace

std::vector<TrajectoryRecord> run_trajectory(const ExperimentConfig& cfg, double kappa,
                                             double h_over_j) {
    SystemParams p = cfg.system;
    p.kappa = {kappa, kappa};
    p.h1 = h_over_j * p.j_coupling;
    p.h2 = h_over_j * p.j_coupling;
    const GeneratorContext ctx = GeneratorContext::from_params(p);
    return evolve(initial_plus_product(), ctx, cfg.integrator);
}

SimulateResult run_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    ensure_dir(cfg.output_dir);

    SimulateResult res;
    res.kappas = cfg.kappa_list;
    res.trajectories.resize(res.kappas.size());
    parallel_for(static_cast<int>(res.kappas.size()), cfg.workers, [&](int i) {
        SystemParams p = cfg.system;
        p.kappa = {res.kappas[i], res.kappas[i]};
        const GeneratorContext ctx = GeneratorContext::from_params(p);
        res.trajectories[i] = evolve(initial_plus_product(), ctx, cfg.integrator);
    });

    for (size_t i = 0; i < res.kappas.size(); ++i) {
        std::string csv = std::string(kTrajectoryHeader) + "\n";
        for (const auto& r : res.trajectories[i]) {
            csv += fmt17(r.t) + "," + fmt17(r.sz1) + "," + fmt17(r.sx1) + "," + fmt17(r.zz) +
                   "," + fmt17(r.purity) + "," + fmt17(r.entropy) + "," + fmt17(r.concurrence) +
                   "," + fmt17(r.min_eig) + "\n";
        }
        const std::string path =
            (fs::path(cfg.output_dir) / ("trajectory_kappa_" + kappa_tag(res.kappas[i]) + ".csv"))
                .string();
        write_file(path, csv);
        res.files.push_back(path);
    }
    write_metadata(cfg);
    return res;
}

namespace {

SweepRow summarize_run(const ExperimentConfig& cfg, double kappa,
                       const std::vector<TrajectoryRecord>& traj) {
    const SteadyStateSummary ss = steady_state_summary(traj, cfg.integrator.t_max);
    double min_eig = traj.front().min_eig;
    for (const auto& r : traj) min_eig = std::min(min_eig, r.min_eig);
    return SweepRow{kappa,         lambda_over_gamma(cfg.system, kappa),
                    ss.c_ss,       ss.c_max,
                    ss.purity_ss,  ss.entropy_ss,
                    min_eig};
}

} // namespace

SweepKappaResult run_sweep_kappa(const ExperimentConfig& cfg) {
    cfg.validate();
    ensure_dir(cfg.output_dir);

    std::vector<double> kappas = cfg.kappa_list;
    std::sort(kappas.begin(), kappas.end());
    SweepKappaResult res;
    res.rows.resize(kappas.size());
    parallel_for(static_cast<int>(kappas.size()), cfg.workers, [&](int i) {
        const auto traj = run_trajectory(cfg, kappas[i], cfg.system.h1 / cfg.system.j_coupling);
        res.rows[i] = summarize_run(cfg, kappas[i], traj);
    });

    std::string csv = std::string(kSweepHeader) + "\n";
    for (const auto& r : res.rows) {
        csv += fmt17(r.kappa) + "," + fmt17(r.lambda_over_gamma) + "," + fmt17(r.c_ss) + "," +
               fmt17(r.c_max) + "," + fmt17(r.purity_ss) + "," + fmt17(r.entropy_ss) + "," +
               fmt17(r.min_eig_global) + "\n";
    }
    res.file = (fs::path(cfg.output_dir) / "sweep_kappa.csv").string();
    write_file(res.file, csv);
    write_metadata(cfg);
    return res;
}

FieldScanResult run_sweep_field(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.kappa_list.empty()) throw std::invalid_argument("sweep-field: empty kappa_list");
    ensure_dir(cfg.output_dir);

    FieldScanResult res;
    res.grid = cfg.field_grid;
    res.kappas = cfg.kappa_list;
    const int nh = static_cast<int>(res.grid.size());
    const int nk = static_cast<int>(res.kappas.size());
    res.c_ss.assign(nh, std::vector<double>(nk, 0.0));

    parallel_for(nh * nk, cfg.workers, [&](int cell) {
        const int ih = cell / nk, ik = cell % nk;
        const auto traj = run_trajectory(cfg, res.kappas[ik], res.grid[ih]);
        res.c_ss[ih][ik] = steady_state_summary(traj, cfg.integrator.t_max).c_ss;
    });

    res.argmax.resize(nk);
    for (int ik = 0; ik < nk; ++ik) {
        int best = 0;
        for (int ih = 1; ih < nh; ++ih)
            if (res.c_ss[ih][ik] > res.c_ss[best][ik]) best = ih;
        res.argmax[ik] = res.grid[best];
    }

    std::string csv = "h_over_J";
    for (double k : res.kappas) csv += ",kappa_" + kappa_tag(k);
    csv += "\n";
    for (int ih = 0; ih < nh; ++ih) {
        csv += fmt17(res.grid[ih]);
        for (int ik = 0; ik < nk; ++ik) csv += "," + fmt17(res.c_ss[ih][ik]);
        csv += "\n";
    }
    csv += "argmax";
    for (int ik = 0; ik < nk; ++ik) csv += "," + fmt17(res.argmax[ik]);
    csv += "\n";
    res.file = (fs::path(cfg.output_dir) / "field_scan.csv").string();
    write_file(res.file, csv);
    write_metadata(cfg);
    return res;
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

namespace {

struct Rng {
    std::mt19937_64 gen;
    std::normal_distribution<double> normal{0.0, 1.0};
    std::uniform_real_distribution<double> uniform{0.0, 1.0};

    explicit Rng(unsigned long seed) : gen(seed) {}

    cplx gauss() { return cplx(normal(gen), normal(gen)); }

    ComplexMatrix matrix(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = gauss();
        return m;
    }

    ComplexMatrix hermitian(int dim) {
        const ComplexMatrix g = matrix(dim);
        ComplexMatrix h(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
        return h;
    }

    ComplexMatrix density(int dim) {
        const ComplexMatrix g = matrix(dim);
        ComplexMatrix rho = g * g.adjoint();
        rho *= 1.0 / rho.trace().real();
        return rho;
    }

    std::array<double, 3> unit_vector() {
        double x, y, z, n2;
        do {
            x = normal(gen);
            y = normal(gen);
            z = normal(gen);
            n2 = x * x + y * y + z * z;
        } while (n2 < 1e-12);
        const double n = std::sqrt(n2);
        return {x / n, y / n, z / n};
    }

    std::array<double, 3> bloch_vector() {
        auto v = unit_vector();
        const double r = uniform(gen);
        return {r * v[0], r * v[1], r * v[2]};
    }

    ComplexMatrix qubit_state(const std::array<double, 3>& r) {
        ComplexMatrix m = ComplexMatrix::identity(2);
        add_scaled(m, r[0], pauli(Axis::x));
        add_scaled(m, r[1], pauli(Axis::y));
        add_scaled(m, r[2], pauli(Axis::z));
        m *= 0.5;
        return m;
    }

    // exp(i theta n.sigma) = cos(theta) I + i sin(theta) n.sigma
    ComplexMatrix local_unitary() {
        const auto n = unit_vector();
        const double theta = uniform(gen) * 2.0 * M_PI;
        ComplexMatrix u = ComplexMatrix::identity(2);
        u *= std::cos(theta);
        add_scaled(u, cplx(0.0, std::sin(theta)), qubit_axis(n));
        return u;
    }

    ComplexMatrix qubit_axis(const std::array<double, 3>& n) {
        ComplexMatrix m(2);
        add_scaled(m, n[0], pauli(Axis::x));
        add_scaled(m, n[1], pauli(Axis::y));
        add_scaled(m, n[2], pauli(Axis::z));
        return m;
    }
};

// 32-point Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// Symbol-to-operator lift convention: the closed operator forms equal the
// symbol-level associator multiplied by -i; this is the constant under
// which the assembled generator stays Hermiticity-preserving.
constexpr cplx kOperatorLift(0.0, -1.0);

struct CheckList {
    std::vector<VerifyCheck> checks;

    void add(const std::string& name, double residual, double threshold) {
        checks.push_back({name, residual <= threshold, residual, threshold});
    }
};

void check_qlinalg(CheckList& out, Rng& rng) {
    double res_pt = 0.0, res_sum = 0.0, res_rec = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const ComplexMatrix a = rng.matrix(2), b = rng.matrix(2);
        ComplexMatrix scaled_a = a;
        scaled_a *= b.trace();
        res_pt = std::max(res_pt, max_abs_diff(partial_trace(kron(a, b), 1), scaled_a));

        const ComplexMatrix h = rng.hermitian(4);
        const EigResult eig = hermitian_eig(h);
        double sum = 0.0;
        for (double v : eig.values) sum += v;
        res_sum = std::max(res_sum, std::abs(sum - h.trace().real()));

        ComplexMatrix rec(4);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    rec(i, j) += eig.values[k] * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
        res_rec = std::max(res_rec, max_abs_diff(rec, h));
    }
    out.add("qlinalg.partial_trace_product", res_pt, 1e-12);
    out.add("qlinalg.eig_trace_sum", res_sum, 1e-10);
    out.add("qlinalg.eig_reconstruction", res_rec, 1e-10);
}

void check_operators(CheckList& out, const SystemParams& base) {
    SystemParams p = base;
    p.h2 = p.h1;  // global spin-flip symmetry requires h1 = h2
    const ComplexMatrix h = build_tfim(p);
    const ComplexMatrix xx = kron(pauli(Axis::x), pauli(Axis::x));
    out.add("operators.tfim_spin_flip_symmetry", max_abs_diff(h * xx, xx * h), 1e-12);
}

void check_bath(CheckList& out, Rng& rng) {
    double res_im = 0.0, res_indep = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const double gp = rng.uniform(rng.gen), ep = 2.0 * rng.uniform(rng.gen) - 1.0;
        const double gm = rng.uniform(rng.gen), em = 2.0 * rng.uniform(rng.gen) - 1.0;
        const auto lam = lambda_coefficients(BathKernels::from_rates(gp, ep, gm, em));
        for (const cplx& l : lam) res_im = std::max(res_im, std::abs(l.real()));
        const auto lam2 = lambda_coefficients(BathKernels::from_rates(gp + 0.37, ep, gm + 1.1, em));
        for (int j = 0; j < 6; ++j) res_indep = std::max(res_indep, std::abs(lam[j] - lam2[j]));
    }
    out.add("bath.lambda_purely_imaginary", res_im, 0.0);
    out.add("bath.lambda_independent_of_gamma", res_indep, 0.0);

    const auto flat = rates_from_spectral_density(SpectralDensity::flat(0.3, 0.0, 2.0, 1.0), 0.0);
    out.add("bath.flat_band_pv_cancellation", std::abs(flat.eps_plus), 1e-8);
    const auto ohmic = rates_from_spectral_density(SpectralDensity::make_ohmic(0.1, 2.0, 1.0), 0.0);
    out.add("bath.zero_temperature_k_minus", std::abs(ohmic.k_minus), 0.0);
}

void check_sw(CheckList& out, Rng& rng) {
    // traciality: (1/4pi) integral of symbol = Tr(A)/2
    std::vector<double> gx, gw;
    gauss_legendre(32, gx, gw);
    double res_trac = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = rng.hermitian(2);
        double integral = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double ct = gx[i], st = std::sqrt(1.0 - ct * ct);
            double phi_sum = 0.0;
            for (int j = 0; j < 64; ++j) {
                const double phi = 2.0 * M_PI * j / 64.0;
                phi_sum += symbol(a, BlochPoint({st * std::cos(phi), st * std::sin(phi), ct}))
                               .real();
            }
            integral += gw[i] * (2.0 * M_PI / 64.0) * phi_sum;
        }
        res_trac = std::max(res_trac, std::abs(integral / (4.0 * M_PI) - a.trace().real() / 2.0));
    }
    out.add("sw.traciality", res_trac, 1e-8);

    // invertibility from four tetrahedral points
    const double s3 = std::sqrt(3.0);
    const std::array<std::array<double, 3>, 4> tet = {{{1 / s3, 1 / s3, 1 / s3},
                                                       {1 / s3, -1 / s3, -1 / s3},
                                                       {-1 / s3, 1 / s3, -1 / s3},
                                                       {-1 / s3, -1 / s3, 1 / s3}}};
    double res_rec = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = rng.hermitian(2);
        // v_k = a0 + sqrt(3) r . n_k; solve the 4x4 system by averaging
        std::array<double, 4> v{};
        for (int k = 0; k < 4; ++k) v[k] = symbol(a, BlochPoint(tet[k])).real();
        const double a0 = (v[0] + v[1] + v[2] + v[3]) / 4.0;
        std::array<double, 3> r{};
        for (int k = 0; k < 4; ++k)
            for (int c = 0; c < 3; ++c) r[c] += (v[k] - a0) * tet[k][c] / (4.0 / 3.0) / s3;
        ComplexMatrix rec = ComplexMatrix::identity(2);
        rec *= a0;
        add_scaled(rec, r[0], pauli(Axis::x));
        add_scaled(rec, r[1], pauli(Axis::y));
        add_scaled(rec, r[2], pauli(Axis::z));
        res_rec = std::max(res_rec, max_abs_diff(rec, a));
    }
    out.add("sw.symbol_reconstruction", res_rec, 1e-10);

    // associator antisymmetry and anti-Hermiticity at symbol level
    const TwistField chi = TwistField::ising_aligned(1.7, -0.8);
    double res_anti = 0.0, res_imag = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const int site = 1 + (rep % 2);
        SymbolGradient f{site, {rng.gauss(), rng.gauss(), rng.gauss()}};
        SymbolGradient g{site, {rng.gauss(), rng.gauss(), rng.gauss()}};
        SymbolGradient h{site, {rng.gauss(), rng.gauss(), rng.gauss()}};
        const std::array<double, 3> pt = {rng.normal(rng.gen), rng.normal(rng.gen),
                                          rng.normal(rng.gen)};
        const cplx v = associator(f, g, h, chi, pt);
        res_anti = std::max(res_anti, std::abs(v + associator(g, f, h, chi, pt)));
        res_anti = std::max(res_anti, std::abs(v + associator(f, h, g, chi, pt)));
        res_anti = std::max(res_anti, std::abs(v - associator(g, h, f, chi, pt)));
        res_anti = std::max(res_anti, std::abs(v - associator(h, f, g, chi, pt)));
        res_anti = std::max(res_anti, std::abs(v + associator(h, g, f, chi, pt)));

        SymbolGradient fr{site, {rng.normal(rng.gen), rng.normal(rng.gen), rng.normal(rng.gen)}};
        SymbolGradient gr{site, {rng.normal(rng.gen), rng.normal(rng.gen), rng.normal(rng.gen)}};
        SymbolGradient hr{site, {rng.normal(rng.gen), rng.normal(rng.gen), rng.normal(rng.gen)}};
        res_imag = std::max(res_imag, std::abs(associator(fr, gr, hr, chi, pt).real()));
    }
    out.add("sw.associator_antisymmetry", res_anti, 1e-12);
    out.add("sw.associator_imaginary_for_real_symbols", res_imag, 1e-13);

    // jacobiator on analytic fields (q-linearity via q = 2.5 on the radial one)
    const std::array<double, 3> pt{0.3, -0.2, 0.5};
    const VectorField radial = [](const std::array<double, 3>& x) { return x; };
    const VectorField divfree = [](const std::array<double, 3>& x) {
        return std::array<double, 3>{x[1], x[2], x[0]};
    };
    const VectorField mixed = [](const std::array<double, 3>& x) {
        return std::array<double, 3>{x[0] * x[1], x[1] * x[2], x[2] * x[0]};
    };
    out.add("sw.jacobiator_radial",
            std::abs(monopole_jacobiator(radial, 2.5, pt, 1, 2, 3) - 3.0 * 2.5), 1e-6);
    out.add("sw.jacobiator_divergence_free",
            std::abs(monopole_jacobiator(divfree, 1.0, pt, 1, 2, 3)), 1e-8);
    out.add("sw.jacobiator_mixed",
            std::abs(monopole_jacobiator(mixed, 1.0, pt, 1, 2, 3) - (pt[0] + pt[1] + pt[2])),
            1e-6);
    out.add("sw.jacobiator_repeated_index",
            std::abs(monopole_jacobiator(radial, 1.0, pt, 1, 1, 2)), 1e-8);
}

void check_generator(CheckList& out, Rng& rng, const SystemParams& base) {
    SystemParams p = base;
    p.kappa = {137.0, 61.0};
    const GeneratorContext ctx = GeneratorContext::from_params(p);
    SystemParams p0 = p;
    p0.kappa = {0.0, 0.0};
    const GeneratorContext ctx0 = GeneratorContext::from_params(p0);
    SystemParams p2 = p;
    p2.kappa = {2.0 * p.kappa[0], 2.0 * p.kappa[1]};
    const GeneratorContext ctx2 = GeneratorContext::from_params(p2);

    double res_tr = 0.0, res_herm = 0.0, res_hom = 0.0, res_sector = 0.0, res_gen = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const ComplexMatrix rho = rng.density(4);
        const ComplexMatrix r = rhs(rho, ctx);
        res_tr = std::max(res_tr, std::abs(r.trace()));
        res_herm = std::max(res_herm, r.hermiticity_residual());

        ComplexMatrix two_f = feedback(rho, ctx);
        two_f *= 2.0;
        res_hom = std::max(res_hom, max_abs_diff(feedback(rho, ctx2), two_f));

        ComplexMatrix sector = rhs(rho, ctx) - rhs(rho, ctx0);
        res_sector = std::max(res_sector, max_abs_diff(sector, feedback(rho, ctx)));

        res_gen = std::max(res_gen, max_abs_diff(general_linear_generator(rho, ctx), r));
    }
    out.add("generator.rhs_traceless", res_tr, 1e-13);
    out.add("generator.rhs_hermiticity_preserving", res_herm, 1e-13);
    out.add("generator.feedback_kappa_homogeneity", res_hom, 0.0);
    out.add("generator.kappa_sector_is_feedback", res_sector, 1e-15);
    out.add("generator.general_equals_rhs_at_t0", res_gen, 1e-14);

    // closed forms vs symbol-level associator evaluator on product states
    const TwistField chi = TwistField::ising_aligned(p.kappa[0], p.kappa[1]);
    double res_assoc = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto r1 = rng.bloch_vector(), r2 = rng.bloch_vector();
        const ComplexMatrix rho = kron(rng.qubit_state(r1), rng.qubit_state(r2));
        const auto closed = closed_form_associators(rho, p);
        const BlochPoint n1(rng.unit_vector()), n2(rng.unit_vector());
        const double s3 = std::sqrt(3.0);
        for (int site = 1; site <= 2; ++site) {
            const auto [grad_s, grad_sdag] = jump_symbol_gradients(p.coupling(site), site);
            const auto& rb = (site == 1) ? r1 : r2;
            const SymbolGradient grad_rho{
                site, {cplx(rb[0] / 4.0), cplx(rb[1] / 4.0), cplx(rb[2] / 4.0)}};
            const auto& nn = (site == 1) ? n1 : n2;
            const std::array<double, 3> sigma_pt = {s3 * nn.n[0], s3 * nn.n[1], s3 * nn.n[2]};
            const std::array<std::array<const SymbolGradient*, 3>, 6> triples = {{
                {&grad_sdag, &grad_s, &grad_rho},  // [S+, S, rho]
                {&grad_s, &grad_sdag, &grad_rho},  // [S, S+, rho]
                {&grad_s, &grad_rho, &grad_sdag},  // [S, rho, S+]
                {&grad_sdag, &grad_rho, &grad_s},  // [S+, rho, S]
                {&grad_rho, &grad_s, &grad_sdag},  // [rho, S, S+]
                {&grad_rho, &grad_sdag, &grad_s},  // [rho, S+, S]
            }};
            for (int j = 0; j < 6; ++j) {
                const cplx sym_val = kOperatorLift * associator(*triples[j][0], *triples[j][1],
                                                                *triples[j][2], chi, sigma_pt);
                const cplx closed_val = symbol(closed[site - 1][j], n1, n2);
                res_assoc = std::max(res_assoc, std::abs(sym_val - closed_val));
            }
        }
    }
    out.add("generator.closed_form_matches_symbol_associator", res_assoc, 1e-12);

    // Bohr decomposition of the embedded jump operators
    const ComplexMatrix h_tfim = ctx.hamiltonian;
    double res_bohr = 0.0;
    for (int site = 1; site <= 2; ++site) {
        const ComplexMatrix s = embed(sigma_minus(), site);
        const auto comps = bohr_decompose(h_tfim, s);
        ComplexMatrix sum(4);
        for (const auto& c : comps) {
            sum += c.op;
            ComplexMatrix comm = h_tfim * c.op - c.op * h_tfim;
            add_scaled(comm, c.omega, c.op);
            res_bohr = std::max(res_bohr, comm.max_abs());
        }
        res_bohr = std::max(res_bohr, max_abs_diff(sum, s));
    }
    out.add("generator.bohr_decomposition", res_bohr, 1e-10);
}

void check_observables(CheckList& out, Rng& rng) {
    // Werner state: C = max(0, (3p-1)/2) = 0.25 at p = 0.5
    const double p = 0.5;
    ComplexMatrix bell(4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    ComplexMatrix werner = ComplexMatrix::identity(4);
    werner *= (1.0 - p) / 4.0;
    add_scaled(werner, p, bell);
    out.add("observables.werner_concurrence", std::abs(concurrence(werner) - 0.25), 1e-10);

    double res_lu = 0.0, res_conc = 0.0, res_zz = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
        const ComplexMatrix rho = rng.density(4);
        const ComplexMatrix u = kron(rng.local_unitary(), rng.local_unitary());
        const ComplexMatrix rotated = u * rho * u.adjoint();
        res_lu = std::max(res_lu, std::abs(concurrence(rotated) - concurrence(rho)));

        const ComplexMatrix rho2 = rng.density(4);
        ComplexMatrix mix = rho;
        mix *= 0.5;
        add_scaled(mix, 0.5, rho2);
        const double gap = von_neumann_entropy(mix) -
                           0.5 * (von_neumann_entropy(rho) + von_neumann_entropy(rho2));
        res_conc = std::max(res_conc, std::max(0.0, -gap));

        const double zz = zz_correlation(rho);
        res_zz = std::max(res_zz, std::max(0.0, std::abs(zz) - 1.0));
    }
    out.add("observables.concurrence_local_unitary_invariance", res_lu, 1e-10);
    out.add("observables.entropy_concavity", res_conc, 1e-10);
    out.add("observables.zz_bounded", res_zz, 0.0);

    // purity = 1 <=> entropy ~ 0
    ComplexMatrix pure(4);
    pure(2, 2) = 1.0;
    const double s_pure = von_neumann_entropy(pure);
    out.add("observables.pure_state_entropy", std::abs(s_pure), 1e-9);
}

void check_integrator_enforcement(CheckList& out, const SystemParams& base) {
    SystemParams p = base;
    p.kappa = {200.0, 200.0};
    const GeneratorContext ctx = GeneratorContext::from_params(p);
    DensityMatrix rho = initial_plus_product();
    double res = 0.0;
    for (int step = 0; step < 100; ++step) {
        rho = enforce_valid(rk4_step(rho, ctx, 0.05));
        res = std::max(res, std::abs(rho.mat.trace() - 1.0));
        res = std::max(res, rho.mat.hermiticity_residual());
    }
    out.add("integrator.post_enforcement_exact", res, 0.0);
}

void check_integrator_convergence(CheckList& out, const ExperimentConfig& cfg) {
    // Step-halving self-consistency at kappa = 200 (no linear oracle):
    // |obs(dt)-obs(dt/2)| / |obs(dt/2)-obs(dt/4)| ~ 16 for RK4.
    SystemParams p = cfg.system;
    p.kappa = {200.0, 200.0};
    const GeneratorContext ctx = GeneratorContext::from_params(p);
    std::array<double, 3> sz{};
    const std::array<double, 3> dts{0.2, 0.1, 0.05};
    for (int i = 0; i < 3; ++i) {
        DensityMatrix rho = initial_plus_product();
        const long n = std::llround(10.0 / dts[i]);
        for (long s = 0; s < n; ++s) rho = rk4_step(rho, ctx, dts[i]);
        sz[i] = site_bloch(rho.mat, 1, Axis::z);
    }
    const double ratio = std::abs(sz[0] - sz[1]) / std::abs(sz[1] - sz[2]);
    out.add("integrator.fourth_order_step_halving", std::abs(ratio - 16.0), 4.0);
}

void check_paper_runs(CheckList& out, const ExperimentConfig& cfg) {
    std::vector<double> kappas = cfg.kappa_list;
    for (double required : {0.0, 200.0})
        if (std::find(kappas.begin(), kappas.end(), required) == kappas.end())
            kappas.push_back(required);
    std::sort(kappas.begin(), kappas.end());

    std::vector<SweepRow> rows(kappas.size());
    parallel_for(static_cast<int>(kappas.size()), cfg.workers, [&](int i) {
        const auto traj = run_trajectory(cfg, kappas[i], cfg.system.h1 / cfg.system.j_coupling);
        rows[i] = summarize_run(cfg, kappas[i], traj);
    });

    double worst_eig = 0.0;
    for (const auto& r : rows) worst_eig = std::min(worst_eig, r.min_eig_global);
    out.add("integrator.cp_monitor_min_eigenvalue", std::max(0.0, -worst_eig), 1e-12);

    const auto row_at = [&](double k) {
        return *std::find_if(rows.begin(), rows.end(),
                             [&](const SweepRow& r) { return r.kappa == k; });
    };
    out.add("paper.c_ss_kappa0", std::abs(row_at(0.0).c_ss - 0.306), 0.01);
    out.add("paper.c_ss_kappa200", std::abs(row_at(200.0).c_ss - 0.125), 0.01);

    double res_mono = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        res_mono = std::max(res_mono, rows[i].c_ss - rows[i - 1].c_ss);
        res_mono = std::max(res_mono, rows[i - 1].entropy_ss - rows[i].entropy_ss);
    }
    out.add("paper.monotone_suppression", res_mono, 1e-9);
}

void check_config_roundtrip(CheckList& out, const ExperimentConfig& cfg) {
    const bool same = parse_config(serialize_config(cfg)) == cfg;
    out.add("cli.config_roundtrip", same ? 0.0 : 1.0, 0.0);
}

} // namespace

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

VerifyReport run_verify(const ExperimentConfig& cfg) {
    cfg.validate();
    ensure_dir(cfg.output_dir);
    Rng rng(cfg.seed);
    CheckList list;

    check_qlinalg(list, rng);
    check_operators(list, cfg.system);
    check_bath(list, rng);
    check_sw(list, rng);
    check_generator(list, rng, cfg.system);
    check_observables(list, rng);
    check_integrator_enforcement(list, cfg.system);
    check_integrator_convergence(list, cfg);
    check_paper_runs(list, cfg);
    check_config_roundtrip(list, cfg);

    VerifyReport report;
    report.checks = std::move(list.checks);

    std::string csv = "name,status,residual\n";
    for (const auto& c : report.checks)
        csv += c.name + "," + (c.pass ? "pass" : "fail") + "," + fmt17(c.residual) + "\n";
    report.file = (fs::path(cfg.output_dir) / "verify_report.csv").string();
    write_file(report.file, csv);
    return report;
}

std::vector<std::string> emit_plots(const ExperimentConfig& cfg) {
    ensure_dir(cfg.output_dir);
    std::vector<std::string> files;
    const double gamma = cfg.system.gamma_plus[0];
    const std::string gsc = fmt17(gamma);

    std::string traj_plots_sz, traj_plots_sx, traj_plots_pur, traj_plots_ent, traj_plots_conc;
    for (size_t i = 0; i < cfg.kappa_list.size(); ++i) {
        const std::string f = "trajectory_kappa_" + kappa_tag(cfg.kappa_list[i]) + ".csv";
        const std::string title = "{/Symbol k} = " + kappa_tag(cfg.kappa_list[i]);
        const std::string sep = (i ? ", \\\n     " : "");
        const auto col = [&](int c) {
            return sep + "'" + f + "' using ($1*" + gsc + "):" + std::to_string(c) +
                   " with lines title '" + title + "'";
        };
        traj_plots_sz += col(2);
        traj_plots_sx += col(3);
        traj_plots_pur += col(5);
        traj_plots_ent += col(6);
        traj_plots_conc += col(7);
    }

    const std::string fig1 =
        "# Relaxation and coherence dynamics (trajectory CSVs from `simulate`)\n"
        "set datafile separator ','\n"
        "set terminal pngcairo size 1200,900\nset output 'fig1_dynamics.png'\n"
        "set multiplot layout 2,2\n"
        "set xlabel 't {/Symbol G}_+'\n"
        "set ylabel '<{/Symbol s}_z^{(1)}>'\nplot " + traj_plots_sz + "\n" +
        "set ylabel '<{/Symbol s}_x^{(1)}>'\nplot " + traj_plots_sx + "\n" +
        "set ylabel 'purity'\nplot " + traj_plots_pur + "\n" +
        "set ylabel 'entropy'\nplot " + traj_plots_ent + "\n" +
        "unset multiplot\n";

    std::string fig2_cols;
    for (size_t i = 0; i < cfg.kappa_list.size(); ++i) {
        fig2_cols += (i ? ", \\\n     " : "");
        fig2_cols += "'field_scan.csv' using 1:" + std::to_string(i + 2) +
                     " with linespoints title '{/Symbol k} = " + kappa_tag(cfg.kappa_list[i]) +
                     "'";
    }
    const std::string fig2 =
        "# Steady-state concurrence vs h/J (field_scan.csv from `sweep-field`)\n"
        "set datafile separator ','\n"
        "set terminal pngcairo size 800,600\nset output 'fig2_field_scan.png'\n"
        "set xlabel 'h/J'\nset ylabel 'C_{ss}'\n"
        "set key top right\n"
        "plot " + fig2_cols + "\n";

    const std::string fig3 =
        "# Concurrence dynamics at the optimal field (trajectory CSVs)\n"
        "set datafile separator ','\n"
        "set terminal pngcairo size 800,600\nset output 'fig3_concurrence_time.png'\n"
        "set xlabel 't {/Symbol G}_+'\nset ylabel 'C({/Symbol r}(t))'\n"
        "plot " + traj_plots_conc + "\n";

    const std::string fig4 =
        "# Steady-state vs transient concurrence (sweep_kappa.csv from `sweep-kappa`)\n"
        "set datafile separator ','\n"
        "set terminal pngcairo size 800,600\nset output 'fig4_suppression.png'\n"
        "set xlabel '{/Symbol l}/{/Symbol G}'\nset ylabel 'concurrence'\n"
        "plot 'sweep_kappa.csv' using 2:4 with linespoints title 'C_{max}', \\\n"
        "     'sweep_kappa.csv' using 2:3 with linespoints title 'C_{ss}'\n";

    const std::array<std::pair<const char*, const std::string*>, 4> scripts = {
        {{"fig1_dynamics.gp", &fig1},
         {"fig2_field_scan.gp", &fig2},
         {"fig3_concurrence_time.gp", &fig3},
         {"fig4_suppression.gp", &fig4}}};
    for (const auto& [name, content] : scripts) {
        const std::string path = (fs::path(cfg.output_dir) / name).string();
        write_file(path, *content);
        files.push_back(path);
    }
    return files;
}

std::string write_metadata(const ExperimentConfig& cfg) {
    ensure_dir(cfg.output_dir);
    std::string meta = "entropy_base=ln\n";
    meta += "time_units=1/J (steady state evaluated at t_max = 200/Gamma_+ by default)\n";
    std::string lg = "lambda_over_gamma_list=";
    for (size_t i = 0; i < cfg.kappa_list.size(); ++i) {
        if (i) lg += ",";
        lg += fmt17(lambda_over_gamma(cfg.system, cfg.kappa_list[i]));
    }
    meta += lg + "\n# --- configuration ---\n" + serialize_config(cfg);
    const std::string path = (fs::path(cfg.output_dir) / "metadata.txt").string();
    write_file(path, meta);
    return path;
}

} // namespace naq
