#include "naq/bath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace naq {

BathKernels BathKernels::from_rates(double gamma_p, double eps_p, double gamma_m, double eps_m) {
    BathKernels k;
    k.gamma_plus = gamma_p;
    k.eps_plus = eps_p;
    k.gamma_minus = gamma_m;
    k.eps_minus = eps_m;
    k.k_plus = cplx(gamma_p / 2.0, eps_p / 2.0);
    k.k_minus = cplx(gamma_m / 2.0, eps_m / 2.0);
    return k;
}

std::array<cplx, 6> lambda_coefficients(const BathKernels& k) {
    const cplx lp(0.0, 2.0 * k.k_plus.imag());
    const cplx lm(0.0, 2.0 * k.k_minus.imag());
    return {lp, lm, lp, lm, lm, lp};
}

double fermi_occupation(double omega, double temperature) {
    if (temperature < 0.0) throw std::invalid_argument("fermi_occupation: temperature < 0");
    if (temperature == 0.0) {
        if (omega > 0.0) return 0.0;
        if (omega < 0.0) return 1.0;
        return 0.5;
    }
    const double x = omega / temperature;
    if (x > 700.0) return 0.0;
    if (x < -700.0) return 1.0;
    return 1.0 / (std::exp(x) + 1.0);
}

SpectralDensity SpectralDensity::flat(double j0, double wmin, double wmax, double wstar) {
    SpectralDensity sd;
    sd.kind = SpectralKind::flat_band;
    sd.amplitude = j0;
    sd.band_min = wmin;
    sd.band_max = wmax;
    sd.omega_star = wstar;
    return sd;
}

SpectralDensity SpectralDensity::make_ohmic(double a, double wc, double wstar) {
    SpectralDensity sd;
    sd.kind = SpectralKind::ohmic;
    sd.amplitude = a;
    sd.cutoff = wc;
    sd.omega_star = wstar;
    return sd;
}

SpectralDensity SpectralDensity::tabulated_density(std::vector<std::pair<double, double>> pts,
                                                   double wstar) {
    if (pts.size() < 2) throw std::invalid_argument("tabulated density needs >= 2 points");
    SpectralDensity sd;
    sd.kind = SpectralKind::tabulated;
    sd.table = std::move(pts);
    sd.omega_star = wstar;
    return sd;
}

double SpectralDensity::value(double omega) const {
    switch (kind) {
        case SpectralKind::flat_band:
            return (omega >= band_min && omega <= band_max) ? amplitude : 0.0;
        case SpectralKind::ohmic:
            return omega > 0.0 ? amplitude * omega * std::exp(-omega / cutoff) : 0.0;
        case SpectralKind::tabulated: {
            if (omega <= table.front().first) return omega < table.front().first ? 0.0 : table.front().second;
            if (omega >= table.back().first) return omega > table.back().first ? 0.0 : table.back().second;
            auto it = std::upper_bound(table.begin(), table.end(), omega,
                                       [](double w, const auto& p) { return w < p.first; });
            const auto& [w1, j1] = *it;
            const auto& [w0, j0] = *(it - 1);
            const double t = (omega - w0) / (w1 - w0);
            return j0 + t * (j1 - j0);
        }
    }
    return 0.0;
}

double SpectralDensity::support_min() const {
    switch (kind) {
        case SpectralKind::flat_band: return band_min;
        case SpectralKind::ohmic: return 0.0;
        case SpectralKind::tabulated: return table.front().first;
    }
    return 0.0;
}

double SpectralDensity::support_max() const {
    switch (kind) {
        case SpectralKind::flat_band: return band_max;
        case SpectralKind::ohmic: return omega_star + 45.0 * cutoff;
        case SpectralKind::tabulated: return table.back().first;
    }
    return 0.0;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (b <= a) return 0.0;
    const int n = 2 * panels;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// PV integral of g(w)/(w - ws) over [a, b] with symmetric excision of
// half-width delta around ws. The symmetric window is integrated in
// paired form [g(ws+u) - g(ws-u)]/u; the remaining one-sided tail is
// regular (distance >= R from the pole).
double pv_excised(const std::function<double(double)>& g, double a, double b, double ws,
                  double delta) {
    const double r_left = ws - a, r_right = b - ws;
    const double r = std::min(r_left, r_right);
    const auto paired = [&](double u) { return (g(ws + u) - g(ws - u)) / u; };
    double total = simpson(paired, delta, r, 4000);
    if (r_left > r) {
        total += simpson([&](double w) { return g(w) / (w - ws); }, a, ws - r, 4000);
    } else if (r_right > r) {
        total += simpson([&](double w) { return g(w) / (w - ws); }, ws + r, b, 4000);
    }
    return total;
}

// Richardson extrapolation delta -> 0 over {d, d/2, d/4}; excision error
// is c1*delta + c3*delta^3 + ...
double pv_richardson(const std::function<double(double)>& g, double a, double b, double ws) {
    const double d = 1e-2 * ws;
    const double a1 = pv_excised(g, a, b, ws, d);
    const double a2 = pv_excised(g, a, b, ws, d / 2.0);
    const double a3 = pv_excised(g, a, b, ws, d / 4.0);
    const double r12 = 2.0 * a2 - a1;
    const double r23 = 2.0 * a3 - a2;
    const double result = (8.0 * r23 - r12) / 7.0;
    const double scale = std::max({std::abs(a1), std::abs(a2), std::abs(a3), 1e-30});
    if (std::abs(r23 - r12) > 1e-5 * scale + 1e-12)
        throw numerical_error("principal-value quadrature did not converge");
    return result;
}

} // namespace

BathKernels rates_from_spectral_density(const SpectralDensity& sd, double temperature) {
    if (temperature < 0.0)
        throw std::invalid_argument("rates_from_spectral_density: temperature < 0");
    const double ws = sd.omega_star;
    const double lo = sd.support_min(), hi = sd.support_max();
    if (!(ws > lo && ws < hi))
        throw std::domain_error("rates_from_spectral_density: omega_star outside support interior");

    const bool t0 = (temperature == 0.0);
    // At T=0 the occupations are exact a.e. limits on the support (w > 0):
    // f+ = 1, f- = 0, so the minus channel is identically zero.
    const auto f_plus = [&](double w) {
        return t0 ? 1.0 : 1.0 - fermi_occupation(w, temperature);
    };
    const auto f_minus = [&](double w) { return t0 ? 0.0 : fermi_occupation(w, temperature); };

    const double gamma_p = 2.0 * M_PI * sd.value(ws) * f_plus(ws);
    const double gamma_m = 2.0 * M_PI * sd.value(ws) * f_minus(ws);

    const auto g_plus = [&](double w) { return sd.value(w) * f_plus(w); };
    const double eps_p = -2.0 * pv_richardson(g_plus, lo, hi, ws);
    double eps_m = 0.0;
    if (!t0) {
        const auto g_minus = [&](double w) { return sd.value(w) * f_minus(w); };
        eps_m = -2.0 * pv_richardson(g_minus, lo, hi, ws);
    }
    return BathKernels::from_rates(gamma_p, eps_p, gamma_m, eps_m);
}

} // namespace naq
