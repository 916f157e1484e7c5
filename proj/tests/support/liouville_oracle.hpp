#pragma once

// Independent kappa = 0 oracle: the linear generator vectorized into a
// 16x16 superoperator (column-stacking convention, assembled from the
// Kronecker identities rather than from the library's rhs), propagated
// exactly through its eigendecomposition.

#include <Eigen/Dense>
#include <complex>

#include "naq/operators.hpp"
#include "naq/qlinalg.hpp"

namespace naqtest {

using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const naq::ComplexMatrix& m) {
    EMat e(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
    return e;
}

inline EMat ekron(const EMat& a, const EMat& b) {
    EMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

/// L acting on vec(rho) with columns stacked: vec(A rho B) = (B^T (x) A) vec(rho).
inline EMat liouvillian_superop(const naq::SystemParams& p) {
    const EMat h = to_eigen(naq::build_tfim(p));
    const EMat id = EMat::Identity(4, 4);
    const std::complex<double> mi(0.0, -1.0);
    EMat sup = mi * (ekron(id, h) - ekron(h.transpose(), id));
    for (int site = 1; site <= 2; ++site) {
        const EMat l = to_eigen(naq::embed(naq::sigma_minus(), site));
        const EMat ll = l.adjoint() * l;
        sup += p.gamma_plus[site - 1] *
               (ekron(l.conjugate(), l) - 0.5 * ekron(id, ll) - 0.5 * ekron(ll.transpose(), id));
    }
    return sup;
}

struct LiouvillePropagator {
    Eigen::ComplexEigenSolver<EMat> solver;
    EMat vectors_inv;

    explicit LiouvillePropagator(const naq::SystemParams& p)
        : solver(liouvillian_superop(p)) {
        vectors_inv = solver.eigenvectors().inverse();
    }

    naq::ComplexMatrix at(const naq::ComplexMatrix& rho0, double t) const {
        Eigen::VectorXcd v(16);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) v(4 * j + i) = rho0(i, j);  // column stacking
        Eigen::VectorXcd coeffs = vectors_inv * v;
        for (int k = 0; k < 16; ++k) coeffs(k) *= std::exp(solver.eigenvalues()(k) * t);
        const Eigen::VectorXcd out = solver.eigenvectors() * coeffs;
        naq::ComplexMatrix m(4);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) m(i, j) = out(4 * j + i);
        return m;
    }
};

} // namespace naqtest
