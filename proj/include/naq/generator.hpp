#pragma once

// Right-hand side of the master equation: coherent commutator, GKLS
// dissipators, the closed-form nonassociative feedback, the general
// six-associator combination for finite-temperature kernels, and the
// Bohr-frequency decomposition utility.

#include <array>
#include <vector>

#include "naq/bath.hpp"
#include "naq/operators.hpp"
#include "naq/qlinalg.hpp"

namespace naq {

struct GeneratorContext {
    struct JumpChannel {
        ComplexMatrix op;      // L
        double rate = 0.0;     // Gamma
        ComplexMatrix op_dag;  // L+
        ComplexMatrix dag_op;  // L+ L
    };

    ComplexMatrix hamiltonian;            // dim 4
    std::vector<JumpChannel> jumps;       // emission channels, rates Gamma_+
    std::vector<JumpChannel> absorption;  // absorption channels, rates Gamma_- (finite T)
    std::array<double, 2> lambda{};       // feedback strengths lambda_a
    std::array<ComplexMatrix, 2> sigma_z_embedded;
    std::array<BathKernels, 2> bath;
    SystemParams params;

    /// Zero-temperature paper pipeline: kernels K+ = (Gamma_+ + i eps_+)/2,
    /// K- = 0, jump operators embed(sigma_-, a) at rates Gamma_+^(a).
    static GeneratorContext from_params(const SystemParams& p);

    /// Same structure with explicit per-site kernels (finite-temperature
    /// path; experimental, no reference values exist for it).
    static GeneratorContext with_bath(const SystemParams& p,
                                      const std::array<BathKernels, 2>& kernels);
};

/// L rho L+ - (L+ L rho + rho L+ L)/2
ComplexMatrix dissipator(const ComplexMatrix& l, const ComplexMatrix& rho);

/// Closed-form associators per site: A_{1,3,6} = -X, A_{2,4,5} = +X with
/// X = C0 r_z kappa sigma_z^(a), C0 = -i g^2/48. Index [site-1][j-1].
std::array<std::array<ComplexMatrix, 6>, 2> closed_form_associators(const ComplexMatrix& rho,
                                                                    const SystemParams& p);

/// N[rho] = -sum_a lambda_a r_z^(a) sigma_z^(a); traceless and Hermitian,
/// depends on rho only through the scalars r_z^(a).
ComplexMatrix feedback(const ComplexMatrix& rho, const GeneratorContext& ctx);

/// drho/dt = -i[H,rho] + sum_a Gamma_+^(a) D[sigma_-^(a)] rho + N[rho]
ComplexMatrix rhs(const ComplexMatrix& rho, const GeneratorContext& ctx);

/// Commutator + dissipator core plus the full six-coefficient combination
/// Lambda_1 (A1+A3+A6) + Lambda_2 (A2+A4+A5) = 3 (Lambda_2 - Lambda_1) X
/// per site; reduces to rhs() exactly when K- = 0.
ComplexMatrix general_linear_generator(const ComplexMatrix& rho, const GeneratorContext& ctx);

struct BohrComponent {
    double omega;         // E_b - E_a, fixed by [H, S(w)] = -w S(w)
    ComplexMatrix op;     // S(w)
};

/// Decompose s into Bohr-frequency components of the Hermitian h.
/// Frequencies within 1e-9 * max|E| are merged.
std::vector<BohrComponent> bohr_decompose(const ComplexMatrix& h, const ComplexMatrix& s);

/// Preallocated scratch for the allocation-free rhs path.
struct RhsWorkspace {
    ComplexMatrix t1, t2;
    explicit RhsWorkspace(int dim = 4) : t1(dim), t2(dim) {}
};

/// Allocation-free rhs used by the integrator hot loop.
void rhs_into(ComplexMatrix& out, const ComplexMatrix& rho, const GeneratorContext& ctx,
              RhsWorkspace& ws);

} // namespace naq
