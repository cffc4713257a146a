#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bicres {

using cplx = std::complex<double>;

/// Stopping rule shared by the iterative kernels.
struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iter = 100;

    /// Throws ValidationError unless every field is positive.
    void validate() const;
};

/// Axis-aligned rectangle in the complex plane.
struct ComplexRectangle {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;

    void validate() const;
    bool contains(cplx z) const noexcept {
        return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min &&
               z.imag() <= im_max;
    }
    double width() const noexcept { return re_max - re_min; }
    double height() const noexcept { return im_max - im_min; }
};

using ComplexFunction = std::function<cplx(cplx)>;
using RealFunction = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

/// Central difference of a complex-valued analytic function along the real
/// direction, with step h = 1e-7 (1 + |z|) unless given.
cplx complex_derivative(const ComplexFunction& f, cplx z, double h = 0.0);

/// First derivative of a real function by Richardson-extrapolated central
/// differences (two levels, h and h/2).
double richardson_derivative(const RealFunction& f, double x, double h = 1e-3);

/// n-th derivative (n = 1, 2, 3) by the fourth-order central stencils.
double central_derivative(const RealFunction& f, double x, int order, double h);

// ---------------------------------------------------------------------------
// Root finding and zero counting
// ---------------------------------------------------------------------------

struct NewtonResult {
    cplx root;
    double residual = 0.0;  ///< |f(root)|
    int iterations = 0;
};

/// Damped Newton iteration: a full step is halved until |f| decreases
/// (at most 30 halvings). Converged once |dz| <= max(abs_tol, rel_tol |z|).
/// Throws NoConvergence after tol.max_iter iterations.
NewtonResult newton_complex(const ComplexFunction& f, cplx seed, const Tolerance& tol = {});

/// Same, with a caller-supplied derivative.
NewtonResult newton_complex(const ComplexFunction& f, const ComplexFunction& df, cplx seed,
                            const Tolerance& tol = {});

struct WindingOptions {
    int segments_per_edge = 64;   ///< initial sampling of each edge
    int max_bisections = 40;      ///< per initial segment
    double max_arg_step = 0.7853981633974483;  ///< pi/4
    double boundary_floor = 0.0;  ///< |f| at or below this on the contour is a boundary zero
};

/// Number of zeros of f inside rect (argument principle, counter-clockwise
/// contour). Each contour step is bisected until the change of arg f is below
/// max_arg_step. Throws BoundaryZero when f vanishes on the contour or the
/// refinement limit is hit, AmbiguousWinding when the accumulated phase is
/// not within 0.1 of a multiple of 2 pi.
int winding_count(const ComplexFunction& f, const ComplexRectangle& rect,
                  const WindingOptions& opts = {});

/// Raw accumulated arg change / (2 pi) along the contour.
double winding_number_raw(const ComplexFunction& f, const ComplexRectangle& rect,
                          const WindingOptions& opts = {});

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive 15-point Gauss-Kronrod quadrature on [lo, hi] (hi may be
/// +infinity). Throws MaxDepthExceeded if the nested-rule error estimate
/// stays above tol after max_depth bisection levels.
QuadratureResult adaptive_quadrature(const RealFunction& f, double lo, double hi,
                                     double tol = 1e-10, unsigned max_depth = 15);

/// Sum of adaptive_quadrature over consecutive breakpoints.
QuadratureResult adaptive_quadrature(const RealFunction& f, std::span<const double> breakpoints,
                                     double tol = 1e-10, unsigned max_depth = 15);

// ---------------------------------------------------------------------------
// Phase handling
// ---------------------------------------------------------------------------

/// Removes jumps of multiples of `period`: each successive difference is
/// reduced into (-period/2, period/2]. The first value is preserved.
std::vector<double> unwrap_phase(std::span<const double> values, double period);

/// Largest |reduced successive difference| / period of a sequence, used to
/// decide whether a grid resolves a phase curve.
double max_reduced_step(std::span<const double> values, double period);

}  // namespace bicres
