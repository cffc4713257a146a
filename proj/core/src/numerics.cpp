#include "bicres/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bicres/errors.hpp"

namespace bicres {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter < 1) {
        throw ValidationError("Tolerance: abs_tol, rel_tol must be positive and max_iter >= 1");
    }
}

void ComplexRectangle::validate() const {
    if (!(re_min < re_max) || !(im_min < im_max)) {
        throw ValidationError("ComplexRectangle: need re_min < re_max and im_min < im_max");
    }
}

cplx complex_derivative(const ComplexFunction& f, cplx z, double h) {
    if (h <= 0.0) h = 1e-7 * (1.0 + std::abs(z));
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

double richardson_derivative(const RealFunction& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double central_derivative(const RealFunction& f, double x, int order, double h) {
    const double fm2 = f(x - 2 * h), fm1 = f(x - h), fp1 = f(x + h), fp2 = f(x + 2 * h);
    switch (order) {
        case 1:
            return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
        case 2:
            return (-fm2 + 16 * fm1 - 30 * f(x) + 16 * fp1 - fp2) / (12 * h * h);
        case 3: {
            const double fm3 = f(x - 3 * h), fp3 = f(x + 3 * h);
            return (fm3 - 8 * fm2 + 13 * fm1 - 13 * fp1 + 8 * fp2 - fp3) / (8 * h * h * h);
        }
        default:
            throw ValidationError("central_derivative: order must be 1, 2 or 3");
    }
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

NewtonResult newton_impl(const ComplexFunction& f, const ComplexFunction& df, cplx z,
                         const Tolerance& tol) {
    tol.validate();
    cplx fz = f(z);
    for (int it = 1; it <= tol.max_iter; ++it) {
        if (fz == cplx{}) return {z, 0.0, it - 1};
        const cplx dfz = df(z);
        if (!finite(dfz) || dfz == cplx{}) {
            throw NoConvergence("newton_complex: vanishing or non-finite derivative");
        }
        cplx step = fz / dfz;
        cplx trial = z - step;
        cplx ftrial = f(trial);
        for (int halving = 0; halving < 30 && (!finite(ftrial) || std::abs(ftrial) > std::abs(fz));
             ++halving) {
            step *= 0.5;
            trial = z - step;
            ftrial = f(trial);
        }
        z = trial;
        fz = ftrial;
        if (std::abs(step) <= std::max(tol.abs_tol, tol.rel_tol * std::abs(z))) {
            return {z, std::abs(fz), it};
        }
    }
    std::ostringstream os;
    os << "newton_complex: no convergence after " << tol.max_iter << " iterations (last z = " << z
       << ")";
    throw NoConvergence(os.str());
}

}  // namespace

NewtonResult newton_complex(const ComplexFunction& f, cplx seed, const Tolerance& tol) {
    return newton_impl(f, [&](cplx z) { return complex_derivative(f, z); }, seed, tol);
}

NewtonResult newton_complex(const ComplexFunction& f, const ComplexFunction& df, cplx seed,
                            const Tolerance& tol) {
    return newton_impl(f, df, seed, tol);
}

namespace {

class ContourWalker {
public:
    ContourWalker(const ComplexFunction& f, const WindingOptions& opts) : f_(f), opts_(opts) {}

    cplx eval(cplx z) const {
        const cplx v = f_(z);
        if (!finite(v) || std::abs(v) <= opts_.boundary_floor) {
            std::ostringstream os;
            os << "winding_count: function vanishes on the contour near " << z;
            throw BoundaryZero(os.str());
        }
        return v;
    }

    double segment(cplx z0, cplx f0, cplx z1, cplx f1, int depth) const {
        const double darg = std::arg(f1 / f0);
        if (std::abs(darg) <= opts_.max_arg_step) return darg;
        if (depth >= opts_.max_bisections) {
            std::ostringstream os;
            os << "winding_count: phase not resolved near " << z0 << " (zero close to contour)";
            throw BoundaryZero(os.str());
        }
        const cplx zm = 0.5 * (z0 + z1);
        const cplx fm = eval(zm);
        return segment(z0, f0, zm, fm, depth + 1) + segment(zm, fm, z1, f1, depth + 1);
    }

private:
    const ComplexFunction& f_;
    const WindingOptions& opts_;
};

}  // namespace

double winding_number_raw(const ComplexFunction& f, const ComplexRectangle& rect,
                          const WindingOptions& opts) {
    rect.validate();
    if (opts.segments_per_edge < 1) throw ValidationError("winding_count: segments_per_edge < 1");
    const std::array<cplx, 5> corners{cplx{rect.re_min, rect.im_min}, cplx{rect.re_max, rect.im_min},
                                      cplx{rect.re_max, rect.im_max}, cplx{rect.re_min, rect.im_max},
                                      cplx{rect.re_min, rect.im_min}};
    ContourWalker walker(f, opts);
    double total = 0.0;
    cplx z0 = corners[0];
    cplx f0 = walker.eval(z0);
    for (std::size_t e = 0; e < 4; ++e) {
        for (int s = 1; s <= opts.segments_per_edge; ++s) {
            const double t = static_cast<double>(s) / opts.segments_per_edge;
            const cplx z1 = corners[e] + t * (corners[e + 1] - corners[e]);
            const cplx f1 = walker.eval(z1);
            total += walker.segment(z0, f0, z1, f1, 0);
            z0 = z1;
            f0 = f1;
        }
    }
    return total / (2.0 * std::numbers::pi);
}

int winding_count(const ComplexFunction& f, const ComplexRectangle& rect,
                  const WindingOptions& opts) {
    const double w = winding_number_raw(f, rect, opts);
    const double n = std::round(w);
    if (std::abs(w - n) > 0.1) {
        std::ostringstream os;
        os << "winding_count: accumulated winding " << w << " is not close to an integer";
        throw AmbiguousWinding(os.str());
    }
    return static_cast<int>(n);
}

QuadratureResult adaptive_quadrature(const RealFunction& f, double lo, double hi, double tol,
                                     unsigned max_depth) {
    if (!(tol > 0.0)) throw ValidationError("adaptive_quadrature: tol must be positive");
    if (lo == hi) return {};
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    // Boost's stopping rule is relative to the first-pass magnitude, so the
    // absolute target is converted with a coarse estimate of the L1 norm.
    double error = 0.0;
    double l1 = 0.0;
    Rule::integrate(f, lo, hi, 0, 1.0, &error, &l1);
    const double rel = std::clamp(0.5 * tol / std::max(l1, std::numeric_limits<double>::min()),
                                  1e-15, 0.5);
    const double value = Rule::integrate(f, lo, hi, max_depth, rel, &error, &l1);
    if (!std::isfinite(value) || error > tol) {
        std::ostringstream os;
        os << "adaptive_quadrature: error estimate " << error << " above tolerance " << tol
           << " on [" << lo << ", " << hi << "]";
        throw MaxDepthExceeded(os.str());
    }
    return {value, error};
}

QuadratureResult adaptive_quadrature(const RealFunction& f, std::span<const double> breakpoints,
                                     double tol, unsigned max_depth) {
    if (breakpoints.size() < 2) throw ValidationError("adaptive_quadrature: need >= 2 breakpoints");
    QuadratureResult total;
    const double per = tol / static_cast<double>(breakpoints.size() - 1);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const auto part = adaptive_quadrature(f, breakpoints[i], breakpoints[i + 1], per, max_depth);
        total.value += part.value;
        total.error_estimate += part.error_estimate;
    }
    return total;
}

namespace {

double reduce(double d, double period) { 
    double r = d - period * std::round(d / period);
    if (r <= -0.5 * period) r += period;
    return r;
}

}  // namespace

std::vector<double> unwrap_phase(std::span<const double> values, double period) {
    if (!(period > 0.0)) throw ValidationError("unwrap_phase: period must be positive");
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i == 0) {
            out.push_back(values[0]);
        } else {
            out.push_back(out.back() + reduce(values[i] - values[i - 1], period));
        }
    }
    return out;
}

double max_reduced_step(std::span<const double> values, double period) {
    double worst = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        worst = std::max(worst, std::abs(reduce(values[i] - values[i - 1], period)) / period);
    }
    return worst;
}

}  // namespace bicres
