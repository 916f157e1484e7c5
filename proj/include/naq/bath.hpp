#pragma once

// Bath kernels K± = (Γ± + iε±)/2, the nonassociative coefficients Λ_j,
// and derivation of (Γ±, ε±) from a spectral density via the resonance
// value and a principal-value integral.

#include <array>
#include <vector>

#include "naq/qlinalg.hpp"

namespace naq {

struct BathKernels {
    cplx k_plus{0.0, 0.0};
    cplx k_minus{0.0, 0.0};
    double gamma_plus = 0.0, gamma_minus = 0.0;
    double eps_plus = 0.0, eps_minus = 0.0;

    static BathKernels from_rates(double gamma_p, double eps_p, double gamma_m = 0.0,
                                  double eps_m = 0.0);
    /// Vacuum limit: K- = 0.
    static BathKernels zero_temperature(double gamma_p, double eps_p) {
        return from_rates(gamma_p, eps_p, 0.0, 0.0);
    }
};

/// Lambda_1 = Lambda_3 = Lambda_6 = 2i Im K+;
/// Lambda_2 = Lambda_4 = Lambda_5 = 2i Im K-. All purely imaginary.
std::array<cplx, 6> lambda_coefficients(const BathKernels& k);

/// Fermi function n_F = 1/(e^(w/T)+1); step limit at T=0 (1/2 at w=0).
double fermi_occupation(double omega, double temperature);

enum class SpectralKind { flat_band, ohmic, tabulated };

struct SpectralDensity {
    SpectralKind kind = SpectralKind::flat_band;
    double amplitude = 0.0;             // J0 (flat) or A (ohmic)
    double cutoff = 1.0;                // ohmic exponential cutoff
    double band_min = 0.0, band_max = 0.0;  // flat-band edges
    std::vector<std::pair<double, double>> table;  // (omega, J) ascending
    double omega_star = 1.0;            // system transition frequency

    static SpectralDensity flat(double j0, double wmin, double wmax, double wstar);
    static SpectralDensity make_ohmic(double a, double wc, double wstar);
    static SpectralDensity tabulated_density(std::vector<std::pair<double, double>> pts,
                                             double wstar);

    double value(double omega) const;  // J(omega), 0 outside support
    double support_min() const;
    double support_max() const;        // quadrature truncation for ohmic
};

/// Gamma_pm = 2*pi*J(w*)*f_pm(w*); eps_pm = -2 PV integral of J f_pm/(w-w*).
/// PV by symmetric excision (delta in {1e-2,5e-3,2.5e-3}*w*) with Richardson
/// extrapolation; composite Simpson elsewhere.
BathKernels rates_from_spectral_density(const SpectralDensity& sd, double temperature);

} // namespace naq
