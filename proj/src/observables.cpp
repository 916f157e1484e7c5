#include "naq/observables.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace naq {

double purity(const ComplexMatrix& rho) {
    cplx t = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j) t += rho(i, j) * rho(j, i);
    return t.real();
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    const std::vector<double> ev = hermitian_eigenvalues(rho);
    double s = 0.0;
    for (double l : ev) {
        if (l < 0.0) {
            if (l < -1e-10)
                std::cerr << "[naq] entropy: clipped eigenvalue " << l << " (beyond 1e-10)\n";
            continue;
        }
        if (l > 0.0) s -= l * std::log(l);
    }
    return s;
}

namespace {

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    const EigResult eig = hermitian_eig(m);
    const int n = m.dim();
    ComplexMatrix r(n);
    for (int k = 0; k < n; ++k) {
        const double l = std::max(eig.values[k], 0.0);
        const double sq = std::sqrt(l);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r(i, j) += sq * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    return r;
}

} // namespace

double concurrence(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("concurrence: two-qubit state required");
    const ComplexMatrix yy = kron(pauli(Axis::y), pauli(Axis::y));
    ComplexMatrix conj_rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) conj_rho(i, j) = std::conj(rho(i, j));
    const ComplexMatrix rho_tilde = yy * conj_rho * yy;
    const ComplexMatrix sq = matrix_sqrt_psd(rho);
    std::vector<double> ev = hermitian_eigenvalues(sq * rho_tilde * sq);
    std::vector<double> lam;
    for (double l : ev) lam.push_back(std::sqrt(std::max(l, 0.0)));
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double site_bloch(const ComplexMatrix& rho, int site, Axis axis) {
    return expectation(rho, embed(pauli(axis), site)).real();
}

double zz_correlation(const ComplexMatrix& rho) {
    return expectation(rho, kron(pauli(Axis::z), pauli(Axis::z))).real();
}

SteadyStateSummary steady_state_summary(const std::vector<TrajectoryRecord>& traj,
                                        double t_eval) {
    if (traj.empty()) throw std::invalid_argument("steady_state_summary: empty trajectory");
    if (traj.back().t < t_eval - 1e-9)
        throw std::invalid_argument("steady_state_summary: trajectory shorter than t_eval");

    const TrajectoryRecord* at = &traj.front();
    double c_max = 0.0;
    for (const auto& r : traj) {
        c_max = std::max(c_max, r.concurrence);
        if (r.t <= t_eval + 1e-9) at = &r;
    }
    return SteadyStateSummary{at->concurrence, c_max, at->purity, at->entropy, at->t};
}

} // namespace naq
