#pragma once

// Stratonovich-Weyl kernel and symbols on the Bloch sphere, the
// Ising-aligned twisted-Poisson associator at leading order, and the
// monopole-bracket Jacobiator verifier on (x, p) phase space.

#include <array>
#include <functional>

#include "naq/qlinalg.hpp"

namespace naq {

struct BlochPoint {
    std::array<double, 3> n;

    explicit BlochPoint(std::array<double, 3> v);
    static BlochPoint normalized(std::array<double, 3> v);
};

/// Gradient of an SW symbol with respect to the ambient coordinates
/// sigma^(a) = sqrt(3) n^(a) of one site.
struct SymbolGradient {
    int site = 1;  // 1 or 2
    std::array<cplx, 3> grad{};
};

/// Per-site twist coefficient chi^(a)(sigma). The Ising-aligned case is
/// chi^(a) = kappa_a * sigma_z^(a).
struct TwistField {
    std::array<std::function<double(const std::array<double, 3>&)>, 2> chi;

    static TwistField ising_aligned(double kappa1, double kappa2);
    double operator()(int site, const std::array<double, 3>& sigma) const;
};

/// Delta(n) = (I + sqrt(3) n.sigma)/2; Hermitian, unit trace,
/// eigenvalues (1 +- sqrt(3))/2.
ComplexMatrix sw_kernel(const BlochPoint& n);

/// Tr[A Delta(n)] for dim-2 A.
cplx symbol(const ComplexMatrix& a, const BlochPoint& n1);
/// Tr[A Delta(n1) (x) Delta(n2)] for dim-4 A.
cplx symbol(const ComplexMatrix& a, const BlochPoint& n1, const BlochPoint& n2);

/// Gradients of the jump-operator symbols: (grad S, grad S+) with
/// grad S = g*(1/2, -i/2, 0) on the given site.
std::pair<SymbolGradient, SymbolGradient> jump_symbol_gradients(double coupling, int site);

std::array<cplx, 3> cross3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b);
cplx dot3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b);

/// Leading-order twisted associator of three symbols with site-local
/// gradients: (-i hbar^3/6) chi^(site)(sigma) (grad f x grad g) . grad h,
/// hbar = 1. All three gradients must live on the same site.
cplx associator(const SymbolGradient& f, const SymbolGradient& g, const SymbolGradient& h,
                const TwistField& chi, const std::array<double, 3>& sigma_point);

using VectorField = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

/// Cyclic bracket sum J(p_i, p_j, p_k) = {p_i,{p_j,p_k}} + cyc. evaluated
/// by central finite differences (step 1e-4, one Richardson refinement) of
/// the monopole-twisted bracket; equals q eps_ijk div B at the point.
/// Indices are 1-based.
double monopole_jacobiator(const VectorField& b_field, double q,
                           const std::array<double, 3>& point, int i, int j, int k);

} // namespace naq
