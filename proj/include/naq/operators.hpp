#pragma once

// Pauli matrices, site embeddings, jump operators, the two-qubit TFIM
// Hamiltonian and initial states. Basis ordering |00>,|01>,|10>,|11> with
// site 1 the left tensor factor; sigma_z = diag(1,-1), |0> = (1,0)^T.
// With these conventions sigma_minus maps |0> -> |1|, so the amplitude
// damping channel drives <sigma_z> toward -1.

#include <array>

#include "naq/qlinalg.hpp"

namespace naq {

enum class Axis { x, y, z };

struct SystemParams {
    double j_coupling = 1.0;             // Ising coupling J (hbar = 1)
    double h1 = 0.25, h2 = 0.25;         // transverse fields
    double g1 = 0.2, g2 = 0.2;           // system-bath couplings
    std::array<double, 2> gamma_plus{0.05, 0.05};  // damping rates per site
    std::array<double, 2> eps_plus{0.01, 0.01};    // dispersive shifts per site
    std::array<double, 2> kappa{0.0, 0.0};         // nonassociativity strengths
    bool zero_temperature = true;

    double coupling(int site) const { return site == 1 ? g1 : g2; }
    double field(int site) const { return site == 1 ? h1 : h2; }

    /// Feedback strength lambda_a = (g_a^2/16) * eps_plus_a * kappa_a.
    double feedback_lambda(int site) const;

    void validate() const;  // gamma_plus >= 0, all fields finite
};

ComplexMatrix pauli(Axis axis);

/// sigma_- = (sigma_x - i sigma_y)/2; single nonzero entry at row 2, col 1.
ComplexMatrix sigma_minus();

/// Site 1 -> kron(op, I2); site 2 -> kron(I2, op).
ComplexMatrix embed(const ComplexMatrix& op, int site);

/// H = -J sz(x)sz - (h1/2) sx(x)I - (h2/2) I(x)sx
ComplexMatrix build_tfim(const SystemParams& p);

/// |+><+| (x) |+><+|: all 16 entries 1/4.
DensityMatrix initial_plus_product();

} // namespace naq
