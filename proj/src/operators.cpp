#include "naq/operators.hpp"

#include <cmath>

namespace naq {

double SystemParams::feedback_lambda(int site) const {
    const double g = coupling(site);
    return (g * g / 16.0) * eps_plus[site - 1] * kappa[site - 1];
}

void SystemParams::validate() const {
    const double vals[] = {j_coupling, h1,           h2,          g1,          g2,
                           gamma_plus[0], gamma_plus[1], eps_plus[0], eps_plus[1],
                           kappa[0],      kappa[1]};
    for (double v : vals)
        if (!std::isfinite(v)) throw std::invalid_argument("SystemParams: non-finite field");
    if (gamma_plus[0] < 0.0 || gamma_plus[1] < 0.0)
        throw std::invalid_argument("SystemParams: gamma_plus must be >= 0");
}

ComplexMatrix pauli(Axis axis) {
    ComplexMatrix m(2);
    switch (axis) {
        case Axis::x:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Axis::y:
            m(0, 1) = cplx(0.0, -1.0);
            m(1, 0) = cplx(0.0, 1.0);
            break;
        case Axis::z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

ComplexMatrix sigma_minus() {
    ComplexMatrix m(2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix embed(const ComplexMatrix& op, int site) {
    if (site != 1 && site != 2) throw std::invalid_argument("embed: site must be 1 or 2");
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    return site == 1 ? kron(op, id2) : kron(id2, op);
}

ComplexMatrix build_tfim(const SystemParams& p) {
    const ComplexMatrix sz = pauli(Axis::z), sx = pauli(Axis::x);
    ComplexMatrix h = kron(sz, sz);
    h *= -p.j_coupling;
    add_scaled(h, -0.5 * p.h1, embed(sx, 1));
    add_scaled(h, -0.5 * p.h2, embed(sx, 2));
    return h;
}

DensityMatrix initial_plus_product() {
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = 0.25;
    return DensityMatrix{m};
}

} // namespace naq
