#pragma once

#include <span>
#include <vector>

#include "bicres/darboux.hpp"
#include "bicres/jost.hpp"
#include "bicres/numerics.hpp"

namespace bicres {

/// V[4] cut off at r = a: V(r) = V[4](r) for r <= a and 0 beyond.
///
/// Construction validates strict bic-mode parameters, a > 0 and W1 > 0 on
/// [0, a], and caches W1 at the origin and at the cutoff.
class TruncatedConfig {
public:
    TruncatedConfig(const PotentialParams& params, double a);

    const PotentialParams& params() const noexcept { return params_; }
    double a() const noexcept { return a_; }
    double w1_origin() const noexcept { return w1_origin_; }
    const W1Bundle& w1_cutoff() const noexcept { return w1_cutoff_; }

    /// Truncated potential.
    double potential(double r) const;

private:
    PotentialParams params_;
    double a_;
    double w1_origin_;
    W1Bundle w1_cutoff_;
};

/// h(k) = u(k,0) v_r(k,0) - v(k,0) u_r(k,0) + k (u(k,0)^2 + v(k,0)^2).
cplx normalizer_h(const PotentialParams& params, cplx k);

/// Regular solution inside the well and its r-derivative.
struct RegularSolution {
    cplx phi;
    cplx phi_r;
};

/// Phi(k, r) and Phi'(k, r) for 0 <= r <= a, normalised to Phi'(0) = 1.
/// Throws DegenerateNormalizer when |h(k)| < 1e-12 max(1, |u0|^2 + |v0|^2);
/// in bic mode this happens within about 2.5e-4 of k = q.
RegularSolution regular_solution(const TruncatedConfig& config, cplx k, double r);

/// Real-analytic functions whose combination d + i g vanishes at the
/// resonances.
struct DG {
    cplx d;
    cplx g;
    cplx combined() const { return d + cplx{0.0, 1.0} * g; }
};

/// Relative distance to q inside which d and g are evaluated in quad
/// precision; the cancellation near the threshold loses about
/// 5 log10(q / |k - q|) digits in double.
inline constexpr double kExtendedBand = 2e-3;

/// Relative distance to q below which real-axis phases are taken from the
/// one-sided limit, since d = g = 0 at k = q.
inline constexpr double kThresholdGap = 1e-8;

DG dg(const TruncatedConfig& config, cplx k);

/// (d + i g) / (k^2 - q^2)^4, which has the threshold factor divided out and
/// stays O(1) relative to its neighbourhood at k = q.
cplx reduced_jost(const TruncatedConfig& config, cplx k);

/// e^{-ika} times reduced_jost, finite deep in the lower half plane where
/// d and g overflow. Same zeros and winding numbers. Valid anywhere, but
/// grows like e^{2a Im k} above the real axis.
cplx reduced_jost_scaled(const TruncatedConfig& config, cplx k);

/// F(-k) and F(k) including the 1/h and W1 prefactors.
struct JostPair {
    cplx F_minus;  ///< F(-k)
    cplx F_plus;   ///< F(k)
};

JostPair jost_function(const TruncatedConfig& config, cplx k);

/// Observables at a real wave number.
struct ScatteringPoint {
    double k = 0.0;
    double d = 0.0;
    double g = 0.0;
    bool jost_available = false;  ///< false where h(k) is degenerate
    cplx F_minus;
    cplx F_plus;
    cplx S;
    double delta_a = 0.0;  ///< principal value in (-pi/2, pi/2]
    double sigma = 0.0;
};

ScatteringPoint scattering_point(const TruncatedConfig& config, double k);

/// S(k) = e^{-2ika} (d - i g) / (d + i g).
cplx s_matrix(const TruncatedConfig& config, cplx k);

/// delta_a(k) = -arctan[(d sin ka + g cos ka) / (d cos ka - g sin ka)],
/// principal value in (-pi/2, pi/2].
double phase_shift(const TruncatedConfig& config, double k);

/// Phase of -F(-k) along the real axis modulo 2 pi: -ka - arg(d + i g).
double physical_phase(const TruncatedConfig& config, double k);

/// Continuous phase curves on a monotone grid.
struct PhaseCurve {
    std::vector<double> k;
    std::vector<double> raw;           ///< principal values
    std::vector<double> unwrapped;     ///< pi-continuation of raw
    std::vector<double> ramp_removed;  ///< unwrapped delta_a + k a
    std::vector<double> physical;      ///< 2 pi continuation of -ka - arg(d + i g)
};

/// Throws UnwrapAmbiguity if the grid is not strictly monotone or any
/// successive reduced step exceeds pi/3.
PhaseCurve phase_shift_unwrapped(const TruncatedConfig& config, std::span<const double> k_grid);

/// sigma = 4 pi / k^2 sin^2 delta_a.
double cross_section(const TruncatedConfig& config, double k);

/// Uniform grid on [lo, hi] with spacing coarse_dk, refined to fine_dk on
/// |k - center| < fine_halfwidth. Endpoints are included.
std::vector<double> refined_grid(double lo, double hi, double coarse_dk, double center,
                                 double fine_halfwidth, double fine_dk);

/// Zeros of the cross section (delta_a = 0 mod pi), bracketed on the grid
/// and bisected.
std::vector<double> cross_section_zeros(const TruncatedConfig& config,
                                        std::span<const double> k_grid);

/// Location of the largest sigma on [lo, hi] (Brent; assumes one maximum).
double cross_section_maximum(const TruncatedConfig& config, double lo, double hi);

}  // namespace bicres
