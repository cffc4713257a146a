#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "bicres/errors.hpp"
#include "bicres/numerics.hpp"

using namespace bicres;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Derivatives, ComplexExp) {
    const cplx z{0.3, -0.7};
    const cplx d = complex_derivative([](cplx x) { return std::exp(x); }, z);
    EXPECT_LT(std::abs(d - std::exp(z)) / std::abs(std::exp(z)), 1e-8);
}

TEST(Derivatives, RichardsonAndStencils) {
    auto f = [](double x) { return std::sin(x); };
    EXPECT_NEAR(richardson_derivative(f, 0.3), std::cos(0.3), 1e-10);
    auto g = [](double x) { return std::exp(x); };
    for (int order = 1; order <= 3; ++order) {
        EXPECT_NEAR(central_derivative(g, 0.5, order, 1e-2), std::exp(0.5), 1e-6) << order;
    }
}

TEST(Newton, FindsImaginaryUnit) {
    auto f = [](cplx z) { return z * z + 1.0; };
    const NewtonResult r = newton_complex(f, {0.5, 0.5});
    EXPECT_LT(std::abs(r.root - cplx{0.0, 1.0}), 1e-12);
    EXPECT_LT(r.residual, 1e-12);
}

TEST(Newton, NoZeroMeansNoConvergence) {
    auto f = [](cplx z) { return std::exp(z); };
    EXPECT_THROW(newton_complex(f, {0.0, 0.0}, {1e-12, 1e-12, 20}), NoConvergence);
}

TEST(Newton, RejectsZeroTolerance) {
    auto f = [](cplx z) { return z; };
    EXPECT_THROW(newton_complex(f, {1.0, 0.0}, {0.0, 1e-12, 10}), ValidationError);
}

TEST(Winding, CountsPolynomialZeros) {
    auto f = [](cplx z) { return (z - cplx{0.5, 0.1}) * (z - cplx{-0.2, -0.3}) * (z - 3.0); };
    EXPECT_EQ(winding_count(f, {-1.0, 1.0, -1.0, 1.0}), 2);
    EXPECT_EQ(winding_count(f, {0.0, 1.0, 0.0, 1.0}), 1);
    EXPECT_EQ(winding_count(f, {1.0, 2.0, -1.0, 1.0}), 0);
}

TEST(Winding, ClusteredZeros) {
    // two zeros 1e-6 apart, far from the contour
    auto f = [](cplx z) { return (z - 1e-6) * (z + 1e-6); };
    EXPECT_EQ(winding_count(f, {-1.0, 1.0, -1.0, 1.0}), 2);
}

TEST(Winding, ZeroOnContour) {
    auto f = [](cplx z) { return z - cplx{1.0, 0.0}; };
    EXPECT_THROW(winding_count(f, {0.0, 1.0, -1.0, 1.0}), BoundaryZero);
}

TEST(Winding, RejectsEmptyBox) {
    auto f = [](cplx z) { return z; };
    EXPECT_THROW(winding_count(f, {1.0, 0.0, -1.0, 1.0}), ValidationError);
}

TEST(Quadrature, KnownIntegrals) {
    EXPECT_NEAR(adaptive_quadrature([](double x) { return std::sin(x); }, 0.0, pi).value, 2.0,
                1e-12);
    EXPECT_NEAR(adaptive_quadrature([](double x) { return std::exp(-x); }, 0.0, INFINITY).value,
                1.0, 1e-10);
    const std::vector<double> bp{0.0, 1.0, 2.0, 3.0};
    EXPECT_NEAR(adaptive_quadrature([](double x) { return x * x; }, bp).value, 9.0, 1e-12);
}

TEST(Quadrature, DepthLimit) {
    auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
    EXPECT_THROW(adaptive_quadrature(f, 0.0, 1.0, 1e-14, 3), MaxDepthExceeded);
}

TEST(Unwrap, SawtoothBecomesLine) {
    std::vector<double> raw, line;
    for (int i = 0; i < 200; ++i) {
        const double x = 0.1 * i;
        line.push_back(x);
        raw.push_back(std::remainder(x, pi));
    }
    const auto u = unwrap_phase(raw, pi);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i] - u[0], line[i] - line[0], 1e-12);
}

TEST(Unwrap, ConstantStaysConstant) {
    const std::vector<double> c(50, -0.7);
    for (const double v : unwrap_phase(c, pi)) EXPECT_EQ(v, -0.7);
    EXPECT_EQ(max_reduced_step(c, pi), 0.0);
}

TEST(Unwrap, RampSlope) {
    const double a = 5000.0, dk = 1e-6;
    std::vector<double> raw;
    for (int i = 0; i <= 10000; ++i) {
        const double k = 0.995 + dk * i;
        raw.push_back(std::atan(std::tan(-k * a)));
    }
    const auto u = unwrap_phase(raw, pi);
    const double slope = (u.back() - u.front()) / (dk * 10000);
    EXPECT_NEAR(slope, -a, 1e-3);
    EXPECT_LT(max_reduced_step(raw, pi), 1.0 / 3.0);
}
