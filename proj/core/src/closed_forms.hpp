#pragma once

// Scalar-generic closed forms shared by the public double-precision API and
// the extended-precision evaluation of d, g close to k = q.

#include <cmath>
#include <complex>

#include "bicres/darboux.hpp"

namespace bicres::detail {

template <class Real>
struct PhaseT {
    Real delta, gamma0, gamma1, gamma2, q;
};

template <class Real>
PhaseT<Real> phase_t(const PotentialParams& p) {
    const Real a = p.alpha();
    const Real t = Real(p.alpha()) * Real(p.q()) - Real(p.beta());
    const Real den = 1 + t * t;
    using std::atan;
    return {atan(t), a / den, -2 * a * a * t / (den * den),
            -2 * a * a * a * (1 - 3 * t * t) / (den * den * den), Real(p.q())};
}

template <class Real>
struct W1T {
    Real w1, w1_r, w1_rr;
};

// Closed form of W1 in x = qr with analytic derivatives (returned in r).
template <class Real>
W1T<Real> w1_closed(const PotentialParams& p, Real r) {
    using std::cos;
    using std::sin;
    const Real q = p.q();
    const Real aq = Real(p.alpha()) * q;
    const Real b = p.beta();
    const Real t = aq - b;
    const Real den = 1 + t * t;
    const Real den2 = den * den;
    const Real c0 = 12 * b * b / den2;
    const Real c1 = 24 * b * aq / den2;
    const Real c2 = 12 * aq * (aq * aq + b * b - 1) / den2;
    const Real p3 = 4 * aq / den, p2 = 6 * aq * aq / den2, p1 = 3 * aq * aq * aq / den2;
    const Real m1 = 2 * aq / den;
    const Real n1 = 2 * aq * (1 - b * t) / den2;
    const Real s2 = 3 * aq / den, s1 = 3 * aq * aq / den2;
    const Real e1 = (1 - 6 * t * t + t * t * t * t) / den2;
    const Real e2 = 4 * t * (1 - t * t) / den2;
    using std::atan;
    const Real delta = atan(t);

    const Real x = q * r;
    const Real x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const Real c2x = cos(2 * x), s2x = sin(2 * x);
    const Real c4x = cos(4 * x), s4x = sin(4 * x);
    const Real cp = cos(2 * (x + delta)), sp = sin(2 * (x + delta));

    const Real poly = 16 * (x4 + p3 * x3 + p2 * x2 + p1 * x) - 12 * (x2 + m1 * x);
    const Real poly_x = 16 * (4 * x3 + 3 * p3 * x2 + 2 * p2 * x + p1) - 12 * (2 * x + m1);
    const Real poly_xx = 16 * (12 * x2 + 6 * p3 * x + 2 * p2) - 24;

    const Real A = 24 * (x2 + n1 * x), A_x = 24 * (2 * x + n1), A_xx = 48;
    const Real B = 16 * (x3 + s2 * x2 + s1 * x) - 12 * x;
    const Real B_x = 16 * (3 * x2 + 2 * s2 * x + s1) - 12;
    const Real B_xx = 16 * (6 * x + 2 * s2);

    // 3 [e1 sin^2 2x + e2 sin 2x cos 2x] = 1.5 e1 (1 - cos 4x) + 1.5 e2 sin 4x
    const Real T = Real(1.5) * e1 * (1 - c4x) + Real(1.5) * e2 * s4x;
    const Real T_x = 6 * e1 * s4x + 6 * e2 * c4x;
    const Real T_xx = 24 * e1 * c4x - 24 * e2 * s4x;

    W1T<Real> w;
    w.w1 = c0 + c1 * (c2x - 1) + c2 * s2x + poly + A * cp + B * sp + T;
    w.w1_r = q * (-2 * c1 * s2x + 2 * c2 * c2x + poly_x + (A_x * cp - 2 * A * sp) +
                  (B_x * sp + 2 * B * cp) + T_x);
    w.w1_rr = q * q *
              (-4 * c1 * c2x - 4 * c2 * s2x + poly_xx + (A_xx * cp - 4 * A_x * sp - 4 * A * cp) +
               (B_xx * sp + 4 * B_x * cp - 4 * B * sp) + T_xx);
    return w;
}

template <class K>
struct UVT {
    K u, v, u_r, v_r;
};

// u(k, r), v(k, r) and their r-derivatives; polynomial in k. K is Real for
// real wave numbers and std::complex<Real> otherwise.
template <class Real, class K>
UVT<K> uv_closed(const PotentialParams& params, K k, Real r) {
    using C = K;
    using std::cos;
    using std::sin;
    const PhaseT<Real> ph = phase_t<Real>(params);
    const Real q = ph.q;
    const Real q2 = q * q, q3 = q2 * q, q4 = q2 * q2, q5 = q4 * q;
    const Real g = r + ph.gamma0, g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
    const Real gam1 = ph.gamma1, gam2 = ph.gamma2;

    const Real th = q * r + ph.delta;
    const Real c2 = cos(2 * th), s2 = sin(2 * th);
    const Real c4 = cos(4 * th), s4 = sin(4 * th);

    const C k2 = k * k, k4 = k2 * k2;
    const C A = k4 + Real(6) * q2 * k2 + q4;  // k^4 + 6 q^2 k^2 + q^4
    const C B = k4 - Real(4) * q2 * k2 - q4;  // k^4 - 4 q^2 k^2 - q^4
    const C Cc = k4 - q4;
    const C E = k2 - q2;
    const C E2 = E * E;
    const C P = k2 + q2;

    // u = a4 g^4 + a2 g^2 + a1 g + a0 + (b2 g^2 + b1 g) cos 2th
    //     + (s3 g^3 + s1 g + s0) sin 2th + e sin^2 2th
    const C a4 = Real(16) * q4 * E2;
    const C a2 = Real(-12) * q2 * A;
    const C a1 = Real(8) * gam2 * q4 * E2;
    const C a0 = Real(-12) * gam1 * gam1 * q4 * E2;
    const C b2 = Real(24) * q2 * B;
    const C b1 = Real(24) * q3 * gam1 * Cc;
    const C s3 = Real(16) * q3 * Cc;
    const C s1 = Real(-12) * q * B;
    const C s0 = Real(-4) * gam2 * q3 * Cc - Real(12) * gam1 * q2 * B;
    const C e = Real(3) * A;

    const C ucos = b2 * g2 + b1 * g;
    const C usin = s3 * g3 + s1 * g + s0;

    UVT<K> out;
    out.u = a4 * g4 + a2 * g2 + a1 * g + a0 + ucos * c2 + usin * s2 + e * s2 * s2;
    out.u_r = Real(4) * a4 * g3 + Real(2) * a2 * g + a1 + (Real(2) * b2 * g + b1) * c2 -
              Real(2) * q * ucos * s2 + (Real(3) * s3 * g2 + s1) * s2 + Real(2) * q * usin * c2 +
              Real(4) * q * e * s2 * c2;

    // v = p3 g^3 + p1 g + p0 + (m3 g^3 + m1 g + m0) cos 2th
    //     + (n2 g^2 + n1 g + n0) sin 2th + w sin 4th
    const C p3 = Real(64) * q4 * k * E;
    const C p1 = Real(-24) * q2 * k * P;
    const C p0 = Real(8) * gam2 * q4 * k * E - Real(48) * gam1 * q5 * k;
    const C m3 = Real(32) * q4 * k * E;
    const C m1 = Real(24) * q2 * k * P;
    const C m0 = Real(-8) * gam2 * q4 * k * E + Real(48) * gam1 * q5 * k;
    const C n2 = Real(96) * q5 * k;
    const C n1 = Real(-48) * gam1 * q4 * k * E;
    const C n0 = Real(-12) * q * k * P;
    const C w = Real(6) * q * k * P;

    const C vcos = m3 * g3 + m1 * g + m0;
    const C vsin = n2 * g2 + n1 * g + n0;

    out.v = p3 * g3 + p1 * g + p0 + vcos * c2 + vsin * s2 + w * s4;
    out.v_r = Real(3) * p3 * g2 + p1 + (Real(3) * m3 * g2 + m1) * c2 - Real(2) * q * vcos * s2 +
              (Real(2) * n2 * g + n1) * s2 + Real(2) * q * vsin * c2 + Real(4) * q * w * c4;
    return out;
}

// d(k), g(k) at the cutoff radius a, with s and c standing for sin ka and
// cos ka (both enter linearly, so a common factor carries through).
template <class Real, class K>
void dg_from_trig(const PotentialParams& params, K k, Real a, K s, K c, K& d, K& g) {
    const UVT<K> o = uv_closed<Real, K>(params, k, Real(0));
    const UVT<K> x = uv_closed<Real, K>(params, k, a);
    const W1T<Real> w = w1_closed<Real>(params, a);
    const K ca = x.u_r * w.w1 - x.u * w.w1_r - k * x.v * w.w1;
    const K cb = x.v_r * w.w1 - x.v * w.w1_r + k * x.u * w.w1;
    d = ca * (o.u * s - o.v * c) + cb * (o.u * c + o.v * s);
    g = -k * w.w1 * (x.u * (o.u * s - o.v * c) + x.v * (o.v * s + o.u * c));
}

template <class Real, class K>
void dg_closed(const PotentialParams& params, K k, Real a, K& d, K& g) {
    using std::cos;
    using std::sin;
    dg_from_trig<Real, K>(params, k, a, sin(k * a), cos(k * a), d, g);
}

// e^{-ika} d and e^{-ika} g for complex k in the lower half plane, where
// sin ka and cos ka themselves overflow once a |Im k| passes ~700.
template <class Real>
void dg_scaled(const PotentialParams& params, std::complex<Real> k, Real a,
               std::complex<Real>& d, std::complex<Real>& g) {
    using C = std::complex<Real>;
    using std::exp;
    const C e2 = exp(C(0, -2) * k * a);
    const C s = (C(1) - e2) / C(0, 2);
    const C c = (C(1) + e2) / Real(2);
    dg_from_trig<Real, C>(params, k, a, s, c, d, g);
}

}  // namespace bicres::detail
