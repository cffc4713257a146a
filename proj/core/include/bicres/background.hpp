#pragma once

#include <array>
#include <functional>
#include <span>

#include "bicres/resonance.hpp"
#include "bicres/truncated.hpp"

namespace bicres {

/// Two resonances k_n - i Gamma_n / 2 entering the interference model.
struct Doublet {
    double k1 = 0.0;
    double half_width1 = 0.0;
    double k2 = 0.0;
    double half_width2 = 0.0;

    static Doublet from(const Resonance& first, const Resonance& second) {
        return {first.k_re, first.half_width, second.k_re, second.half_width};
    }
    /// k2 - k1 < (Gamma1 + Gamma2) / 2
    bool overlapping() const { return k2 - k1 < half_width1 + half_width2; }
};

struct YZ {
    double Y = 0.0;
    double Z = 0.0;
};

/// Y = (k - k1)(k - k2) - Gamma1 Gamma2 / 4,
/// Z = [(k - k1) Gamma2 + (k - k2) Gamma1] / 2.
YZ yz(const Doublet& doublet, double k);

struct FitReport {
    std::array<double, 2> minima{};   ///< exact-sigma minima the model is pinned to
    double condition_number = 0.0;    ///< of the 2x2 system in (lambda0, lambda1)
    double max_deviation = 0.0;       ///< filled by hadamard_residual on the window
    std::array<double, 2> window{};
    bool overlapping = false;
};

/// lambda(k) = lambda0 + lambda1 k. mu(k) cancels from every observable and
/// is not represented.
struct BackgroundFit {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    Doublet doublet;
    double a = 0.0;
    FitReport report;

    double lambda(double k) const { return lambda0 + lambda1 * k; }
};

struct ModelPoint {
    double delta = 0.0;        ///< -arctan(num / den), principal value in (-pi/2, pi/2]
    double delta_mu_pos = 0.0;  ///< -arg(den + i num) in (-pi, pi], the phase of F(-k) if mu > 0
    double sigma = 0.0;
};

/// Model phase and cross section. Throws ValidationError for k <= 0.
ModelPoint model_phase_and_sigma(const BackgroundFit& fit, double k);

/// The two numerator and denominator pieces of the model phase:
/// num = (Y - lambda Z) sin ka + (lambda Y + Z) cos ka,
/// den = (Y - lambda Z) cos ka - (lambda Y + Z) sin ka.
std::array<double, 2> model_parts(const BackgroundFit& fit, double k);

/// Default window [k1 - 10 Gamma1, k2 + 10 Gamma2].
std::array<double, 2> default_window(const Doublet& doublet);

/// Solves for (lambda0, lambda1) so that the model sigma vanishes at k_a and
/// k_b. The conditions are linear in lambda. Throws SingularFitSystem when
/// the system is singular, e.g. for Gamma = 0 with the minima at k1, k2.
BackgroundFit fit_from_minima(const Doublet& doublet, double a, double k_a, double k_b);

/// Minima of the sampled exact sigma on the window, located on a grid of
/// spacing dk and refined by Brent's method. Throws MinimaNotFound unless
/// two minima below 1e-4 (4 pi / k^2) are present; the two deepest are used.
std::array<double, 2> exact_minima(const std::function<double(double)>& sigma,
                                   std::array<double, 2> window, double dk = 1e-6);

/// Locates the exact minima, fits lambda and records the shape deviation on
/// the window.
BackgroundFit fit_lambda(const TruncatedConfig& config, const Doublet& doublet,
                         const std::function<double(double)>& exact_sigma,
                         std::array<double, 2> window);

/// max |sigma_model - sigma_exact| / (4 pi / k^2) over the grid.
double hadamard_residual(const TruncatedConfig& config, const BackgroundFit& fit,
                         std::span<const double> k_grid);

}  // namespace bicres
