#include "bicres/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "bicres/errors.hpp"
#include "closed_forms.hpp"

namespace bicres {

UVBundle uv_bundle(const PotentialParams& params, cplx k, double r) {
    if (!(r >= 0.0)) throw ValidationError("uv_bundle: r must be >= 0");
    const auto o = detail::uv_closed<double, cplx>(params, k, r);
    return {o.u, o.v, o.u_r, o.v_r};
}

JostValue jost_value(const PotentialParams& params, cplx k, double r, JostNormalization norm) {
    const UVBundle uv = uv_bundle(params, k, r);
    const W1Bundle w = w1_bundle(params, r);
    const cplx I{0.0, 1.0};
    const cplx ep = std::exp(I * k * r);
    const cplx em = std::exp(-I * k * r);
    const cplx wp = uv.u + I * uv.v;
    const cplx wm = uv.u - I * uv.v;
    const cplx wp_r = uv.u_r + I * uv.v_r;
    const cplx wm_r = uv.u_r - I * uv.v_r;

    JostValue j;
    j.f_plus = wp * ep / w.w1;
    j.f_minus = wm * em / w.w1;
    j.f_plus_r = (wp_r + I * k * wp) * ep / w.w1 - j.f_plus * (w.w1_r / w.w1);
    j.f_minus_r = (wm_r - I * k * wm) * em / w.w1 - j.f_minus * (w.w1_r / w.w1);
    if (norm == JostNormalization::unit_flux) {
        const cplx E = k * k - params.q() * params.q();
        if (std::abs(E) < kSpectralSingularityThreshold) {
            std::ostringstream os;
            os << "jost_value: |k^2 - q^2| = " << std::abs(E)
               << " too close to the spectral singularity for flux normalisation";
            throw NearSpectralSingularity(os.str());
        }
        j.F_plus = j.f_plus / (E * E);
        j.F_minus = j.f_minus / (E * E);
        j.normalized = true;
    }
    return j;
}

cplx jost_wronskian(const PotentialParams& params, cplx k, double r) {
    const JostValue j = jost_value(params, k, r, JostNormalization::unnormalized);
    return j.f_plus * j.f_minus_r - j.f_minus * j.f_plus_r;
}

BoundState::BoundState(const PotentialParams& params, Options opts)
    : params_(params), phase_(phase_data(params)) {
    if (!(opts.r_cut > 0.0)) throw ValidationError("BoundState: r_cut must be positive");
    const double q = params.q();
    auto sq = [this](double r) {
        const double p = amplitude(r);
        return p * p;
    };
    // Break points every half period keep each panel smooth.
    std::vector<double> bp;
    const double panel = std::numbers::pi / q;
    for (double r = 0.0; r < opts.r_cut; r += panel) bp.push_back(r);
    bp.push_back(opts.r_cut);
    quad_part_ = adaptive_quadrature(sq, bp, opts.quad_tol).value;

    // Tail: psi_B^2 ~ C^2 r^-4, C^2 from the mean of psi_B^2 r^4 on [R/2, R].
    const double lo = 0.5 * opts.r_cut;
    auto weighted = [&](double r) { return sq(r) * std::pow(r, 4); };
    std::vector<double> tbp;
    for (double r = lo; r < opts.r_cut; r += panel) tbp.push_back(r);
    tbp.push_back(opts.r_cut);
    const double c2 = adaptive_quadrature(weighted, tbp, 1e-8).value / (opts.r_cut - lo);
    tail_part_ = c2 / (3.0 * std::pow(opts.r_cut, 3));
    norm_ = quad_part_ + tail_part_;
}

double BoundState::amplitude(double r) const {
    // With tan(delta) = -2 alpha q the bracket vanishes identically at r = 0;
    // evaluated it leaves a rounding residue of order 1e-16.
    if (r == 0.0) return 0.0;
    const double q = params_.q();
    const double th = phase_.theta(r);
    const double g = phase_.gamma(r);
    const double s = std::sin(th), c = std::cos(th);
    const double w1 = w1_bundle(params_, r).w1;
    return 24.0 * q * q / w1 *
           (-2.0 * q * q * g * g * c + (q * g + q * q * phase_.gamma1) * s + s * s * c);
}

double BoundState::tail_log_slope(double r_lo, double r_hi) const {
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) {
        throw ValidationError("tail_log_slope: need 0 < r_lo < r_hi");
    }
    const double period = std::numbers::pi / params_.q();
    auto rms = [&](double r0) {
        auto sq = [this](double r) {
            const double p = amplitude(r);
            return p * p;
        };
        return std::sqrt(adaptive_quadrature(sq, r0, r0 + period, 1e-16).value / period);
    };
    return (std::log(rms(r_hi)) - std::log(rms(r_lo))) / (std::log(r_hi) - std::log(r_lo));
}

BoundState bound_state(const PotentialParams& params) {
    if (!params.bic_mode()) {
        throw NotBicMode("bound_state: requires beta = 3 alpha q");
    }
    return BoundState(params);
}

double schrodinger_residual(const PotentialParams& params, cplx k, const WaveFunction& psi,
                            std::span<const double> grid, double h) {
    if (!(h > 0.0)) throw ValidationError("schrodinger_residual: h must be positive");
    double worst = 0.0;
    double scale = 0.0;
    for (const double r : grid) {
        const cplx p0 = psi(r);
        const cplx d2 = (-psi(r - 2 * h) + 16.0 * psi(r - h) - 30.0 * p0 + 16.0 * psi(r + h) -
                         psi(r + 2 * h)) /
                        (12.0 * h * h);
        const cplx res = -d2 + (potential_v4(params, r) - k * k) * p0;
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, std::abs(p0));
    }
    if (scale == 0.0) throw ValidationError("schrodinger_residual: wave function vanishes on grid");
    return worst / scale;
}

}  // namespace bicres
