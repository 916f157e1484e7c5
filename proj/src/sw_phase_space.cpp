#include "naq/sw_phase_space.hpp"

#include <cmath>

namespace naq {

namespace {
constexpr double SQRT3 = 1.7320508075688772;
}

BlochPoint::BlochPoint(std::array<double, 3> v) : n(v) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("BlochPoint: |n| must be 1 within 1e-12");
}

BlochPoint BlochPoint::normalized(std::array<double, 3> v) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (norm == 0.0) throw std::invalid_argument("BlochPoint: zero vector");
    return BlochPoint({v[0] / norm, v[1] / norm, v[2] / norm});
}

TwistField TwistField::ising_aligned(double kappa1, double kappa2) {
    TwistField t;
    t.chi[0] = [kappa1](const std::array<double, 3>& s) { return kappa1 * s[2]; };
    t.chi[1] = [kappa2](const std::array<double, 3>& s) { return kappa2 * s[2]; };
    return t;
}

double TwistField::operator()(int site, const std::array<double, 3>& sigma) const {
    if (site != 1 && site != 2) throw std::invalid_argument("TwistField: site must be 1 or 2");
    return chi[site - 1] ? chi[site - 1](sigma) : 0.0;
}

ComplexMatrix sw_kernel(const BlochPoint& n) {
    ComplexMatrix m(2);
    m(0, 0) = 0.5 * (1.0 + SQRT3 * n.n[2]);
    m(1, 1) = 0.5 * (1.0 - SQRT3 * n.n[2]);
    m(0, 1) = 0.5 * SQRT3 * cplx(n.n[0], -n.n[1]);
    m(1, 0) = 0.5 * SQRT3 * cplx(n.n[0], n.n[1]);
    return m;
}

cplx symbol(const ComplexMatrix& a, const BlochPoint& n1) {
    if (a.dim() != 2) throw std::invalid_argument("symbol: single-point form needs dim 2");
    return expectation(a, sw_kernel(n1));
}

cplx symbol(const ComplexMatrix& a, const BlochPoint& n1, const BlochPoint& n2) {
    if (a.dim() != 4) throw std::invalid_argument("symbol: two-point form needs dim 4");
    return expectation(a, kron(sw_kernel(n1), sw_kernel(n2)));
}

std::pair<SymbolGradient, SymbolGradient> jump_symbol_gradients(double coupling, int site) {
    if (site != 1 && site != 2)
        throw std::invalid_argument("jump_symbol_gradients: site must be 1 or 2");
    SymbolGradient s{site, {coupling * cplx(0.5, 0.0), coupling * cplx(0.0, -0.5), 0.0}};
    SymbolGradient sdag{site, {coupling * cplx(0.5, 0.0), coupling * cplx(0.0, 0.5), 0.0}};
    return {s, sdag};
}

std::array<cplx, 3> cross3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

cplx dot3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

cplx associator(const SymbolGradient& f, const SymbolGradient& g, const SymbolGradient& h,
                const TwistField& chi, const std::array<double, 3>& sigma_point) {
    if (f.site != g.site || g.site != h.site)
        throw std::invalid_argument("associator: gradients must live on one site");
    const cplx triple = dot3(cross3(f.grad, g.grad), h.grad);
    return cplx(0.0, -1.0 / 6.0) * chi(f.site, sigma_point) * triple;
}

namespace {

using PhasePoint = std::array<double, 6>;  // (x1,x2,x3,p1,p2,p3)
using PhaseFn = std::function<double(const PhasePoint&)>;

constexpr double FD_STEP = 1e-4;

// Central difference with one Richardson refinement.
double partial(const PhaseFn& f, PhasePoint z, int coord) {
    const auto diff = [&](double h) {
        PhasePoint zp = z, zm = z;
        zp[coord] += h;
        zm[coord] -= h;
        return (f(zp) - f(zm)) / (2.0 * h);
    };
    const double d1 = diff(FD_STEP);
    const double d2 = diff(FD_STEP / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

// Monopole-twisted bracket. The pp-block is q eps_ijk B^k(x); the
// canonical block is oriented so that {p_i, G(x)} = +dG/dx_i, which is the
// orientation under which the cyclic sum reproduces q eps_ijk div B.
double twisted_bracket(const PhaseFn& f, const PhaseFn& g, const VectorField& b, double q,
                       const PhasePoint& z) {
    std::array<double, 6> df{}, dg{};
    for (int c = 0; c < 6; ++c) {
        df[c] = partial(f, z, c);
        dg[c] = partial(g, z, c);
    }
    double s = 0.0;
    for (int m = 0; m < 3; ++m) s += df[3 + m] * dg[m] - df[m] * dg[3 + m];
    const std::array<double, 3> bv = b({z[0], z[1], z[2]});
    // q * eps_mnl * B_l * df/dp_m * dg/dp_n
    s += q * (bv[2] * (df[3] * dg[4] - df[4] * dg[3]) +
              bv[0] * (df[4] * dg[5] - df[5] * dg[4]) +
              bv[1] * (df[5] * dg[3] - df[3] * dg[5]));
    return s;
}

} // namespace

double monopole_jacobiator(const VectorField& b_field, double q,
                           const std::array<double, 3>& point, int i, int j, int k) {
    for (int idx : {i, j, k})
        if (idx < 1 || idx > 3)
            throw std::invalid_argument("monopole_jacobiator: indices must be in {1,2,3}");

    const auto momentum = [](int idx) {
        return PhaseFn([idx](const PhasePoint& z) { return z[2 + idx]; });
    };
    const PhasePoint z{point[0], point[1], point[2], 0.0, 0.0, 0.0};

    const auto nested = [&](int a, int b, int c) {
        const PhaseFn inner = [&, b, c](const PhasePoint& w) {
            return twisted_bracket(momentum(b), momentum(c), b_field, q, w);
        };
        return twisted_bracket(momentum(a), inner, b_field, q, z);
    };
    return nested(i, j, k) + nested(j, k, i) + nested(k, i, j);
}

} // namespace naq
