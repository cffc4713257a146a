#include "bicres/darboux.hpp"

#include <cmath>
#include <sstream>

#include "bicres/errors.hpp"
#include "closed_forms.hpp"

namespace bicres {

PotentialParams::PotentialParams(double alpha, double beta, double q, ParamMode mode)
    : alpha_(alpha), beta_(beta), q_(q), mode_(mode), bic_mode_(beta == 3.0 * alpha * q) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(q)) {
        throw ValidationError("PotentialParams: alpha, beta, q must be finite");
    }
    if (!(q > 0.0)) throw ValidationError("PotentialParams: q must be positive");
    if (beta == 0.0) throw ValidationError("PotentialParams: beta must be non-zero");
    if (mode == ParamMode::strict && !(beta > 0.0)) {
        throw ValidationError("PotentialParams: strict mode requires beta > 0");
    }
}

PotentialParams PotentialParams::strict(double alpha, double beta, double q) {
    return {alpha, beta, q, ParamMode::strict};
}

PotentialParams PotentialParams::diagnostic(double alpha, double beta, double q) {
    return {alpha, beta, q, ParamMode::diagnostic};
}

PotentialParams PotentialParams::bic(double alpha, double q) {
    return {alpha, 3.0 * alpha * q, q, ParamMode::strict};
}

PhaseData phase_data(const PotentialParams& params) {
    const double a = params.alpha();
    const double t = params.t();
    const double den = 1.0 + t * t;
    PhaseData p;
    p.q = params.q();
    p.delta = std::atan(t);
    p.gamma0 = a / den;
    p.gamma1 = -2.0 * a * a * t / (den * den);
    p.gamma2 = -2.0 * a * a * a * (1.0 - 3.0 * t * t) / (den * den * den);
    return p;
}

double w1_at_origin(const PotentialParams& params) {
    const double t = params.t();
    const double den = 1.0 + t * t;
    return 12.0 * params.beta() * params.beta() / (den * den);
}

namespace {

void require_radius(double r, const char* who) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw ValidationError(std::string(who) + ": r must be finite and >= 0");
    }
}

}  // namespace

W1Bundle w1_bundle(const PotentialParams& params, double r) {
    require_radius(r, "w1_bundle");
    const auto w = detail::w1_closed<double>(params, r);
    return {w.w1, w.w1_r, w.w1_rr};
}

double w1_generic(const PotentialParams& params, double r) {
    require_radius(r, "w1_generic");
    const PhaseData ph = phase_data(params);
    const double q = params.q();
    const double qg = q * ph.gamma(r);
    const double qg1 = q * q * ph.gamma1;
    const double qg2 = q * q * q * ph.gamma2;
    const double th2 = 2.0 * ph.theta(r);
    const double s = std::sin(th2);
    return 16 * std::pow(qg, 4) - 12 * qg * qg + 8 * qg2 * qg - 12 * qg1 * qg1 +
           24 * (qg1 * qg + qg * qg) * std::cos(th2) + 3 * s * s +
           (16 * qg * qg * qg - 12 * qg - 12 * qg1 - 4 * qg2) * s;
}

bool w1_is_singular(const PotentialParams& params, double r, double w1) {
    const double x = params.q() * r;
    return std::abs(w1) < 1e-10 * (1.0 + x * x * x * x);
}

namespace {

W1Bundle checked_bundle(const PotentialParams& params, double r) {
    const W1Bundle w = w1_bundle(params, r);
    if (w1_is_singular(params, r, w.w1)) {
        std::ostringstream os;
        os << "V[4] is singular at r = " << r << " (W1 = " << w.w1 << ")";
        throw SingularPotential(os.str());
    }
    return w;
}

}  // namespace

double potential_v4(const PotentialParams& params, double r) {
    const W1Bundle w = checked_bundle(params, r);
    return -2.0 * (w.w1_rr * w.w1 - w.w1_r * w.w1_r) / (w.w1 * w.w1);
}

double potential_v4_log(const PotentialParams& params, double r) {
    const W1Bundle w = checked_bundle(params, r);
    const double l1 = w.w1_r / w.w1;
    return -2.0 * (w.w1_rr / w.w1 - l1 * l1);
}

std::vector<SignChange> scan_w1_sign(const PotentialParams& params, double r_max, double step) {
    if (!(step > 0.0)) throw ValidationError("scan_w1_sign: step must be positive");
    if (!(r_max >= 0.0)) throw ValidationError("scan_w1_sign: r_max must be >= 0");
    auto w = [&](double r) { return w1_bundle(params, r).w1; };
    std::vector<SignChange> out;
    const auto n = static_cast<long>(std::ceil(r_max / step));
    double r0 = 0.0;
    double w0 = w(r0);
    for (long i = 1; i <= n; ++i) {
        const double r1 = std::min(r_max, static_cast<double>(i) * step);
        const double w1 = w(r1);
        if ((w0 <= 0.0) != (w1 <= 0.0)) {
            double lo = r0, hi = r1, flo = w0;
            for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = w(mid);
                if ((fm <= 0.0) == (flo <= 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push_back({r0, r1, 0.5 * (lo + hi)});
        }
        r0 = r1;
        w0 = w1;
    }
    return out;
}

}  // namespace bicres
