#include "bicres/truncated.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/float128.hpp>

#include "bicres/errors.hpp"
#include "closed_forms.hpp"

namespace bicres {

namespace {

constexpr cplx I{0.0, 1.0};

using f128 = boost::multiprecision::float128;
using c128 = std::complex<f128>;

bool in_extended_band(const TruncatedConfig& config, cplx k) {
    return std::abs(k - config.params().q()) < kExtendedBand * config.params().q();
}

DG dg_extended(const TruncatedConfig& config, cplx k) {
    const f128 a = config.a();
    if (k.imag() == 0.0) {
        f128 d, g;
        detail::dg_closed<f128, f128>(config.params(), f128(k.real()), a, d, g);
        return {cplx{static_cast<double>(d), 0.0}, cplx{static_cast<double>(g), 0.0}};
    }
    c128 d, g;
    detail::dg_closed<f128, c128>(config.params(), c128(k.real(), k.imag()), a, d, g);
    return {cplx{static_cast<double>(d.real()), static_cast<double>(d.imag())},
            cplx{static_cast<double>(g.real()), static_cast<double>(g.imag())}};
}

}  // namespace

TruncatedConfig::TruncatedConfig(const PotentialParams& params, double a)
    : params_(params), a_(a), w1_origin_(w1_at_origin(params)), w1_cutoff_{} {
    if (params.mode() != ParamMode::strict) {
        throw ValidationError("TruncatedConfig: strict parameters required");
    }
    if (!params.bic_mode()) throw NotBicMode("TruncatedConfig: requires beta = 3 alpha q");
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("TruncatedConfig: a must be > 0");
    const double step = std::min(0.05, a / 64.0) / params.q();
    if (!scan_w1_sign(params, a, step).empty()) {
        throw SingularPotential("TruncatedConfig: W1 vanishes on [0, a]");
    }
    w1_cutoff_ = w1_bundle(params, a);
}

double TruncatedConfig::potential(double r) const {
    return r <= a_ ? potential_v4(params_, r) : 0.0;
}

cplx normalizer_h(const PotentialParams& params, cplx k) {
    // h vanishes at q in bic mode; the same cancellation as in d and g
    if (std::abs(k - params.q()) < kExtendedBand * params.q()) {
        const c128 kk(k.real(), k.imag());
        const auto o = detail::uv_closed<f128, c128>(params, kk, f128(0));
        const c128 h = o.u * o.v_r - o.v * o.u_r + kk * (o.u * o.u + o.v * o.v);
        return {static_cast<double>(h.real()), static_cast<double>(h.imag())};
    }
    const UVBundle o = uv_bundle(params, k, 0.0);
    return o.u * o.v_r - o.v * o.u_r + k * (o.u * o.u + o.v * o.v);
}

namespace {

template <class Real, class K>
struct RegularT {
    K phi, phi_r, h;
    Real scale;
};

// Phi and Phi' from the closed forms, with h(k) and the size of (u0, v0)
// for the degeneracy test.
template <class Real, class K>
RegularT<Real, K> regular_closed(const PotentialParams& params, K k, Real r, Real w0) {
    using std::cos;
    using std::sin;
    const auto o = detail::uv_closed<Real, K>(params, k, Real(0));
    const auto x = detail::uv_closed<Real, K>(params, k, r);
    const auto w = detail::w1_closed<Real>(params, r);
    const K s = sin(k * r), c = cos(k * r);
    const K A = o.u * s - o.v * c;
    const K B = o.v * s + o.u * c;
    using std::norm;
    RegularT<Real, K> out;
    out.h = o.u * o.v_r - o.v * o.u_r + k * (o.u * o.u + o.v * o.v);
    out.scale = norm(o.u) + norm(o.v);
    out.phi = (w0 / (out.h * w.w1)) * (x.u * A + x.v * B);
    const K ca = x.u_r * w.w1 - x.u * w.w1_r - k * x.v * w.w1;
    const K cb = x.v_r * w.w1 - x.v * w.w1_r + k * x.u * w.w1;
    out.phi_r = (w0 / (out.h * w.w1 * w.w1)) * (ca * A + cb * B);
    return out;
}

void check_h(cplx h, double scale, cplx k) {
    if (std::abs(h) < 1e-12 * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "regular solution normaliser h(k) = " << h << " is degenerate at k = " << k;
        throw DegenerateNormalizer(os.str());
    }
}

cplx to_double(const c128& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

RegularSolution regular_solution(const TruncatedConfig& config, cplx k, double r) {
    if (!(r >= 0.0) || r > config.a()) {
        throw ValidationError("regular_solution: r must lie in [0, a]");
    }
    const auto& params = config.params();
    // Phi is a difference of two nearly coalesced Jost solutions close to q
    // and loses digits there the same way d and g do.
    if (in_extended_band(config, k)) {
        const auto x = regular_closed<f128, c128>(params, c128(k.real(), k.imag()), f128(r),
                                                  f128(config.w1_origin()));
        check_h(to_double(x.h), static_cast<double>(x.scale), k);
        return {to_double(x.phi), to_double(x.phi_r)};
    }
    const auto x = regular_closed<double, cplx>(params, k, r, config.w1_origin());
    check_h(x.h, x.scale, k);
    return {x.phi, x.phi_r};
}

DG dg(const TruncatedConfig& config, cplx k) {
    if (in_extended_band(config, k)) return dg_extended(config, k);
    cplx d, g;
    detail::dg_closed<double, cplx>(config.params(), k, config.a(), d, g);
    return {d, g};
}

cplx reduced_jost(const TruncatedConfig& config, cplx k) {
    const double q = config.params().q();
    if (in_extended_band(config, k)) {
        const c128 kk(k.real(), k.imag());
        c128 d, g;
        detail::dg_closed<f128, c128>(config.params(), kk, f128(config.a()), d, g);
        const c128 e = kk * kk - f128(q) * f128(q);
        const c128 e2 = e * e;
        const c128 r = (d + c128(0, 1) * g) / (e2 * e2);
        return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
    }
    const DG x = dg(config, k);
    const cplx e2 = (k * k - q * q) * (k * k - q * q);
    return x.combined() / (e2 * e2);
}

cplx reduced_jost_scaled(const TruncatedConfig& config, cplx k) {
    const double q = config.params().q();
    if (in_extended_band(config, k)) {
        const c128 kk(k.real(), k.imag());
        c128 d, g;
        detail::dg_scaled<f128>(config.params(), kk, f128(config.a()), d, g);
        const c128 e = kk * kk - f128(q) * f128(q);
        const c128 e2 = e * e;
        const c128 r = (d + c128(0, 1) * g) / (e2 * e2);
        return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
    }
    cplx d, g;
    detail::dg_scaled<double>(config.params(), k, config.a(), d, g);
    const cplx e2 = (k * k - q * q) * (k * k - q * q);
    return (d + I * g) / (e2 * e2);
}

JostPair jost_function(const TruncatedConfig& config, cplx k) {
    const cplx h = normalizer_h(config.params(), k);
    const UVBundle o = uv_bundle(config.params(), k, 0.0);
    check_h(h, std::norm(o.u) + std::norm(o.v), k);
    const DG x = dg(config, k);
    const double wa = config.w1_cutoff().w1;
    const cplx pre = config.w1_origin() / (h * wa * wa);
    const cplx e = std::exp(I * k * config.a());
    return {pre * e * (x.d + I * x.g), pre / e * (x.d - I * x.g)};
}

cplx s_matrix(const TruncatedConfig& config, cplx k) {
    const DG x = dg(config, k);
    return std::exp(-2.0 * I * k * config.a()) * (x.d - I * x.g) / (x.d + I * x.g);
}

namespace {

double principal(double numerator, double denominator) {
    // -arctan(n / d) reduced into (-pi/2, pi/2].
    double p = -std::atan2(numerator, denominator);
    if (p > 0.5 * std::numbers::pi) p -= std::numbers::pi;
    if (p <= -0.5 * std::numbers::pi) p += std::numbers::pi;
    return p;
}

struct PhaseParts {
    double numerator;
    double denominator;
};

// d and g vanish together at k = q; phases there come from the one-sided
// value a small gap away.
double off_threshold(const TruncatedConfig& config, double k) {
    const double q = config.params().q();
    const double gap = kThresholdGap * q;
    if (std::abs(k - q) < gap) return k < q ? q - gap : q + gap;
    return k;
}

PhaseParts phase_parts(const TruncatedConfig& config, double k) {
    k = off_threshold(config, k);
    const DG x = dg(config, k);
    const double d = x.d.real(), g = x.g.real();
    const double s = std::sin(k * config.a()), c = std::cos(k * config.a());
    return {d * s + g * c, d * c - g * s};
}

}  // namespace

double phase_shift(const TruncatedConfig& config, double k) {
    const PhaseParts p = phase_parts(config, k);
    return principal(p.numerator, p.denominator);
}

double physical_phase(const TruncatedConfig& config, double k) {
    const PhaseParts p = phase_parts(config, k);
    return -std::atan2(p.numerator, p.denominator);
}

double cross_section(const TruncatedConfig& config, double k) {
    if (!(k > 0.0)) throw ValidationError("cross_section: k must be positive");
    const double s = std::sin(phase_shift(config, k));
    return 4.0 * std::numbers::pi / (k * k) * s * s;
}

ScatteringPoint scattering_point(const TruncatedConfig& config, double k) {
    if (!(k > 0.0)) throw ValidationError("scattering_point: k must be positive");
    ScatteringPoint p;
    p.k = k;
    const double ke = off_threshold(config, k);
    const DG x = dg(config, ke);
    p.d = x.d.real();
    p.g = x.g.real();
    try {
        const JostPair j = jost_function(config, k);
        p.F_minus = j.F_minus;
        p.F_plus = j.F_plus;
        p.jost_available = true;
    } catch (const DegenerateNormalizer&) {
        p.jost_available = false;
    }
    const double ka = ke * config.a();
    p.S = std::exp(-2.0 * I * ka) * (p.d - I * p.g) / (p.d + I * p.g);
    p.delta_a = principal(p.d * std::sin(ka) + p.g * std::cos(ka), p.d * std::cos(ka) - p.g * std::sin(ka));
    const double s = std::sin(p.delta_a);
    p.sigma = 4.0 * std::numbers::pi / (k * k) * s * s;
    return p;
}

PhaseCurve phase_shift_unwrapped(const TruncatedConfig& config, std::span<const double> k_grid) {
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
        if (!(k_grid[i] > k_grid[i - 1])) {
            throw UnwrapAmbiguity("phase_shift_unwrapped: grid must be strictly increasing");
        }
    }
    PhaseCurve c;
    c.k.assign(k_grid.begin(), k_grid.end());
    std::vector<double> shifted, phys;
    for (const double k : k_grid) {
        const PhaseParts p = phase_parts(config, k);
        c.raw.push_back(principal(p.numerator, p.denominator));
        shifted.push_back(c.raw.back() + k * config.a());
        phys.push_back(-std::atan2(p.numerator, p.denominator));
    }
    constexpr double pi = std::numbers::pi;
    const double worst = std::max(max_reduced_step(c.raw, pi), max_reduced_step(shifted, pi));
    if (worst > 1.0 / 3.0) {
        std::ostringstream os;
        os << "phase_shift_unwrapped: grid too coarse, reduced phase step " << worst * pi
           << " rad exceeds pi/3";
        throw UnwrapAmbiguity(os.str());
    }
    c.unwrapped = unwrap_phase(c.raw, pi);
    c.ramp_removed = unwrap_phase(shifted, pi);
    c.physical = unwrap_phase(phys, 2.0 * pi);
    return c;
}

std::vector<double> refined_grid(double lo, double hi, double coarse_dk, double center,
                                 double fine_halfwidth, double fine_dk) {
    if (!(hi > lo) || !(coarse_dk > 0.0) || !(fine_dk > 0.0) || !(fine_halfwidth >= 0.0)) {
        throw ValidationError("refined_grid: need lo < hi and positive steps");
    }
    // Breakpoints of the three regimes clipped to [lo, hi]; each piece is
    // filled by index so the grid does not depend on accumulated rounding.
    const double f_lo = std::clamp(center - fine_halfwidth, lo, hi);
    const double f_hi = std::clamp(center + fine_halfwidth, lo, hi);
    const std::array<double, 4> cuts{lo, f_lo, f_hi, hi};
    const std::array<double, 3> steps{coarse_dk, fine_dk, coarse_dk};
    std::vector<double> g;
    for (std::size_t piece = 0; piece < 3; ++piece) {
        const double a = cuts[piece], b = cuts[piece + 1];
        if (!(b > a)) continue;
        const auto n = static_cast<long>(std::ceil((b - a) / steps[piece] - 1e-9));
        if (n > 50'000'000) throw ValidationError("refined_grid: too many points");
        for (long i = 0; i < n; ++i) g.push_back(a + (b - a) * static_cast<double>(i) / n);
    }
    g.push_back(hi);
    return g;
}

std::vector<double> cross_section_zeros(const TruncatedConfig& config,
                                        std::span<const double> k_grid) {
    // Zeros of delta_a mod pi. The numerator alone also changes sign at k = q,
    // where d and g vanish together, so brackets are taken on the principal
    // phase and branch jumps near +-pi/2 are skipped.
    auto phase = [&](double k) { return phase_shift(config, k); };
    constexpr double quarter = 0.25 * std::numbers::pi;
    std::vector<double> zeros;
    double prev = k_grid.empty() ? 0.0 : phase(k_grid[0]);
    for (std::size_t i = 1; i < k_grid.size(); ++i) {
        const double cur = phase(k_grid[i]);
        const double plo = prev;
        prev = cur;
        if ((plo < 0.0) == (cur < 0.0) || std::abs(plo) > quarter || std::abs(cur) > quarter) {
            continue;
        }
        auto r = boost::math::tools::bisect(
            phase, k_grid[i - 1], k_grid[i],
            [](double x, double y) { return std::abs(x - y) <= 4e-16 * std::abs(y); });
        zeros.push_back(0.5 * (r.first + r.second));
    }
    return zeros;
}

double cross_section_maximum(const TruncatedConfig& config, double lo, double hi) {
    if (!(hi > lo) || !(lo > 0.0)) throw ValidationError("cross_section_maximum: need 0 < lo < hi");
    auto neg = [&](double k) { return -cross_section(config, k); };
    const auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 52);
    return r.first;
}

}  // namespace bicres
