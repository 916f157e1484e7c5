#pragma once

// Minimal dense complex linear algebra for the small Hilbert spaces used
// here (dim 2 and 4; kron products up to dim 8 appear in tests). Row-major
// storage, value semantics throughout.

#include <complex>
#include <vector>

#include "naq/errors.hpp"

namespace naq {

using cplx = std::complex<double>;

/// Hermiticity enforcement tolerance for density matrices.
inline constexpr double HERM_TOL = 1e-12;
/// Residual tolerance for the Jacobi eigensolver.
inline constexpr double EIG_TOL = 1e-10;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    size_t size() const { return a_.size(); }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    /// max_ij |a_ij|
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_residual() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

/// out = a * b, into preallocated storage (no aliasing with a or b).
void mul_into(ComplexMatrix& out, const ComplexMatrix& a, const ComplexMatrix& b);
/// out += s * m
void add_scaled(ComplexMatrix& out, cplx s, const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor product with standard block layout:
/// result[(i*db+k),(j*db+l)] = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator over the kept site of a two-qubit (dim 4) operator.
/// keep is 1 (left factor) or 2 (right factor).
ComplexMatrix partial_trace(const ComplexMatrix& m, int keep);

struct EigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors, matching values
};

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// first; it must be Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Full eigendecomposition by cyclic complex Jacobi rotations.
EigResult hermitian_eig(const ComplexMatrix& m);

struct DensityMatrix {
    ComplexMatrix mat;

    /// Validates Hermiticity (<= HERM_TOL) and unit trace (<= HERM_TOL).
    static DensityMatrix make(const ComplexMatrix& m);
};

/// Tr(rho * obs)
cplx expectation(const DensityMatrix& rho, const ComplexMatrix& obs);
cplx expectation(const ComplexMatrix& rho, const ComplexMatrix& obs);

} // namespace naq
