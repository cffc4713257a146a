#pragma once

#include <functional>
#include <span>

#include "bicres/darboux.hpp"
#include "bicres/numerics.hpp"

namespace bicres {

/// u(k, r), v(k, r) of the reduced Wronskian w± = u ± i v and their
/// r-derivatives. Both are polynomials in k, so complex k is accepted; for
/// real k all four values are real.
struct UVBundle {
    cplx u;
    cplx v;
    cplx u_r;
    cplx v_r;
};

UVBundle uv_bundle(const PotentialParams& params, cplx k, double r);

/// |k^2 - q^2| below this blocks the flux-normalised Jost solutions.
inline constexpr double kSpectralSingularityThreshold = 1e-8;

/// Jost solutions of the untruncated problem at one (k, r).
///
/// f± = (u ± i v) e^{±ikr} / W1 and F± = f± / (k^2 - q^2)^2. The flux
/// normalised pair is present only when requested.
struct JostValue {
    cplx f_plus;
    cplx f_minus;
    cplx f_plus_r;
    cplx f_minus_r;
    cplx F_plus;
    cplx F_minus;
    bool normalized = false;
};

enum class JostNormalization { unnormalized, unit_flux };

/// Throws NearSpectralSingularity when unit_flux is requested and
/// |k^2 - q^2| < kSpectralSingularityThreshold.
JostValue jost_value(const PotentialParams& params, cplx k, double r,
                     JostNormalization norm = JostNormalization::unit_flux);

/// W(f+, f-) = f+ f-' - f- f+' evaluated from the closed forms.
cplx jost_wronskian(const PotentialParams& params, cplx k, double r);

/// Bound state embedded in the continuum at E = q^2.
///
/// amplitude() is the closed form
///   psi_B = 24 q^2 / W1 [-2 q^2 gamma^2 cos theta + (q gamma + q^2 gamma1) sin theta
///                        + sin^2 theta cos theta],
/// normalized() divides by the square root of its norm.
class BoundState {
public:
    struct Options {
        double r_cut = 1000.0;
        double quad_tol = 1e-9;  // absolute, shared over the pi/q panels
    };

    explicit BoundState(const PotentialParams& params) : BoundState(params, Options{}) {}
    BoundState(const PotentialParams& params, Options opts);

    double amplitude(double r) const;
    double normalized(double r) const { return amplitude(r) / std::sqrt(norm_); }
    double probability(double r) const {
        const double p = normalized(r);
        return p * p;
    }

    /// int_0^inf psi_B^2 dr of the unnormalised amplitude.
    double norm() const noexcept { return norm_; }
    double quadrature_part() const noexcept { return quad_part_; }
    double tail_part() const noexcept { return tail_part_; }

    /// Slope of log(rms envelope of |psi_B|) against log r between the two
    /// radii; the rms is taken over one period pi/q.
    double tail_log_slope(double r_lo, double r_hi) const;

    const PotentialParams& params() const noexcept { return params_; }

private:
    PotentialParams params_;
    PhaseData phase_;
    double norm_ = 1.0;
    double quad_part_ = 0.0;
    double tail_part_ = 0.0;
};

/// Throws NotBicMode unless beta = 3 alpha q.
BoundState bound_state(const PotentialParams& params);

using WaveFunction = std::function<cplx(double)>;

/// max over the grid of |-psi'' + (V[4] - k^2) psi| divided by max |psi|,
/// with psi'' from the five-point stencil of spacing h.
double schrodinger_residual(const PotentialParams& params, cplx k, const WaveFunction& psi,
                            std::span<const double> grid, double h = 1e-3);

}  // namespace bicres
