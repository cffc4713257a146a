#pragma once

#include <vector>

namespace bicres {

/// How strictly PotentialParams validates beta.
enum class ParamMode {
    strict,      ///< beta > 0; required by every scattering computation
    diagnostic,  ///< beta != 0; admits beta < 0 to exhibit a vanishing W1
};

/// The triple (alpha, beta, q) that fixes the four-fold Darboux potential.
///
/// The base phase is delta(q) = arctan(alpha q - beta). When beta = 3 alpha q
/// the bound state in the continuum vanishes at the origin; this case is
/// flagged as bic_mode().
class PotentialParams {
public:
    static PotentialParams strict(double alpha, double beta, double q);
    static PotentialParams diagnostic(double alpha, double beta, double q);
    /// Strict parameters with beta set to 3 alpha q.
    static PotentialParams bic(double alpha, double q);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double q() const noexcept { return q_; }
    ParamMode mode() const noexcept { return mode_; }
    bool bic_mode() const noexcept { return bic_mode_; }

    /// t = tan(delta) = alpha q - beta.
    double t() const noexcept { return alpha_ * q_ - beta_; }

private:
    PotentialParams(double alpha, double beta, double q, ParamMode mode);

    double alpha_;
    double beta_;
    double q_;
    ParamMode mode_;
    bool bic_mode_;
};

/// Base phase delta(q) and its first three q-derivatives.
struct PhaseData {
    double delta = 0.0;
    double gamma0 = 0.0;  ///< d delta / dq
    double gamma1 = 0.0;  ///< d^2 delta / dq^2
    double gamma2 = 0.0;  ///< d^3 delta / dq^3
    double q = 0.0;

    double theta(double r) const noexcept { return q * r + delta; }
    double gamma(double r) const noexcept { return r + gamma0; }
};

PhaseData phase_data(const PotentialParams& params);

/// W1(q, r) with its first and second r-derivatives.
struct W1Bundle {
    double w1 = 0.0;
    double w1_r = 0.0;
    double w1_rr = 0.0;
};

/// Closed form of W1 obtained after substituting delta = arctan(alpha q - beta),
/// with analytic r-derivatives. Requires r >= 0.
W1Bundle w1_bundle(const PotentialParams& params, double r);

/// W1 from the general gamma-parameterised Wronskian expression.
double w1_generic(const PotentialParams& params, double r);

/// W1(q, 0) = 12 beta^2 / (1 + (alpha q - beta)^2)^2.
double w1_at_origin(const PotentialParams& params);

/// True when |W1| is below 1e-10 (1 + (qr)^4).
bool w1_is_singular(const PotentialParams& params, double r, double w1);

/// V[4](r) = -2 (W1'' W1 - W1'^2) / W1^2. Throws SingularPotential near a
/// zero of W1.
double potential_v4(const PotentialParams& params, double r);

/// V[4](r) evaluated as -2 d^2/dr^2 ln W1 = -2 (W1''/W1 - (W1'/W1)^2).
double potential_v4_log(const PotentialParams& params, double r);

/// A bracket [lo, hi] on which W1 changes sign, with a bisected zero.
struct SignChange {
    double lo = 0.0;
    double hi = 0.0;
    double root = 0.0;
};

/// Samples W1 on [0, r_max] with the given step and reports every sign
/// change. An empty result certifies W1 > 0 on the sampled grid.
std::vector<SignChange> scan_w1_sign(const PotentialParams& params, double r_max, double step);

}  // namespace bicres
