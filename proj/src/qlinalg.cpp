#include "naq/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace naq {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::hermiticity_residual() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

void mul_into(ComplexMatrix& out, const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    }
}

void add_scaled(ComplexMatrix& out, cplx s, const ComplexMatrix& m) {
    const int n = out.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) += s * m(i, j);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    ComplexMatrix r(a.dim());
    mul_into(r, a, b);
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix r(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) r(i * db + k, j * db + l) = a(i, j) * b(k, l);
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int keep) {
    if (m.dim() != 4) throw std::invalid_argument("partial_trace: dim 4 required");
    if (keep != 1 && keep != 2) throw std::invalid_argument("partial_trace: keep must be 1 or 2");
    ComplexMatrix r(2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx s = 0.0;
            for (int t = 0; t < 2; ++t)
                s += (keep == 1) ? m(i * 2 + t, j * 2 + t) : m(t * 2 + i, t * 2 + j);
            r(i, j) = s;
        }
    }
    return r;
}

namespace {

// One cyclic sweep of complex Jacobi rotations: for each off-diagonal pair
// (p,q) apply the unitary that zeroes a(p,q). Rotations accumulate into v.
void jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v) {
    const int n = a.dim();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const cplx apq = a(p, q);
            const double mag = std::abs(apq);
            if (mag == 0.0) continue;
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const cplx phase = apq / mag;  // e^{i arg apq}
            const double tau = (aqq - app) / (2.0 * mag);
            double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            // Columns: [p q] <- [p q] * [[c, s*phase], [-s*conj(phase), c]]
            for (int i = 0; i < n; ++i) {
                const cplx aip = a(i, p), aiq = a(i, q);
                a(i, p) = c * aip - s * std::conj(phase) * aiq;
                a(i, q) = s * phase * aip + c * aiq;
                const cplx vip = v(i, p), viq = v(i, q);
                v(i, p) = c * vip - s * std::conj(phase) * viq;
                v(i, q) = s * phase * vip + c * viq;
            }
            // Rows: conjugate-transpose action
            for (int j = 0; j < n; ++j) {
                const cplx apj = a(p, j), aqj = a(q, j);
                a(p, j) = c * apj - s * phase * aqj;
                a(q, j) = s * std::conj(phase) * apj + c * aqj;
            }
        }
    }
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

EigResult hermitian_eig(const ComplexMatrix& m) {
    const int n = m.dim();
    if (m.hermiticity_residual() > 1e-10)
        throw std::invalid_argument("hermitian_eig: input not Hermitian within 1e-10");

    // Symmetrize to kill roundoff-level asymmetry before rotating.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.max_abs(), 1e-300);
    constexpr int max_sweeps = 60;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= 1e-15 * scale * n) break;
        jacobi_sweep(a, v);
    }
    if (sweep == max_sweeps && offdiag_norm(a) > EIG_TOL * scale)
        throw numerical_error("hermitian_eig: Jacobi iteration did not converge; offdiag=" +
                              std::to_string(offdiag_norm(a)));

    EigResult r;
    r.values.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        r.values[i] = a(i, i).real();
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
    std::sort(r.values.begin(), r.values.end());
    r.vectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, order[j]);
    return r;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eig(m).values;
}

DensityMatrix DensityMatrix::make(const ComplexMatrix& m) {
    if (m.hermiticity_residual() > HERM_TOL)
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    if (std::abs(m.trace() - 1.0) > HERM_TOL)
        throw std::invalid_argument("DensityMatrix: trace not 1 within 1e-12");
    return DensityMatrix{m};
}

cplx expectation(const ComplexMatrix& rho, const ComplexMatrix& obs) {
    if (rho.dim() != obs.dim()) throw std::invalid_argument("expectation: dimension mismatch");
    cplx t = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int k = 0; k < rho.dim(); ++k) t += rho(i, k) * obs(k, i);
    return t;
}

cplx expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
    return expectation(rho.mat, obs);
}

} // namespace naq
