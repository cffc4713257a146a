#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "bicres/errors.hpp"
#include "bicres/truncated.hpp"

using namespace bicres;

namespace {

constexpr double pi = std::numbers::pi;
const PotentialParams kDefault = PotentialParams::bic(1.0, 1.0);

const TruncatedConfig& config() {
    static const TruncatedConfig c(kDefault, 5000.0);
    return c;
}

// tests/oracles/oracles.py: zeros of Phi' sin ka - k Phi cos ka, Phi from
// the Crum determinant.
constexpr double kSigmaZero1 = 0.9997210660317979;
constexpr double kSigmaZero2 = 1.000526178163135;

double mod(double x, double p) { return x - p * std::round(x / p); }

}  // namespace

TEST(Config, Validation) {
    EXPECT_THROW(TruncatedConfig(PotentialParams::strict(1.0, 5.0, 1.0), 100.0), NotBicMode);
    EXPECT_THROW(TruncatedConfig(kDefault, 0.0), ValidationError);
    EXPECT_THROW(TruncatedConfig(kDefault, -3.0), ValidationError);
    EXPECT_EQ(config().potential(5001.0), 0.0);
    EXPECT_EQ(config().potential(2.0), potential_v4(kDefault, 2.0));
}

TEST(RegularSolution, InitialConditions) {
    const TruncatedConfig c(kDefault, 50.0);
    const RegularSolution s = regular_solution(c, {0.8, -0.01}, 0.0);
    EXPECT_LT(std::abs(s.phi), 1e-12);
    EXPECT_LT(std::abs(s.phi_r - 1.0), 1e-12);
    EXPECT_THROW(regular_solution(c, 0.8, 51.0), ValidationError);
}

TEST(RegularSolution, SatisfiesEquation) {
    const TruncatedConfig c(kDefault, 60.0);
    std::vector<double> g;
    for (int i = 0; i <= 400; ++i) g.push_back(0.1 + (50.0 - 0.1) * i / 400);
    for (const cplx k : {cplx{0.8, 0.0}, cplx{1.2, -0.003}}) {
        auto phi = [&](double r) { return regular_solution(c, k, r).phi; };
        EXPECT_LT(schrodinger_residual(kDefault, k, phi, g), 1e-5) << k;
    }
}

TEST(RegularSolution, DegenerateNearThreshold) {
    const TruncatedConfig c(kDefault, 50.0);
    EXPECT_THROW(regular_solution(c, 1.0 + 1e-6, 1.0), DegenerateNormalizer);
}

TEST(SMatrix, UnitModulusOnRealAxis) {
    for (double k = 0.9; k <= 1.1; k += 0.0013) {
        EXPECT_NEAR(std::abs(s_matrix(config(), k)), 1.0, 1e-10) << k;
        EXPECT_NEAR(std::abs(scattering_point(config(), k).S), 1.0, 1e-10) << k;
    }
    for (const double k : {0.5, 1.0, 1.0 + 1e-9, 2.5}) {
        EXPECT_NEAR(std::abs(scattering_point(config(), k).S), 1.0, 1e-10) << k;
    }
}

TEST(Scattering, ThresholdPoint) {
    const ScatteringPoint p = scattering_point(config(), 1.0);
    EXPECT_FALSE(p.jost_available);
    EXPECT_TRUE(std::isfinite(p.delta_a));
    EXPECT_NEAR(p.sigma, 4 * pi * std::pow(std::sin(p.delta_a), 2), 1e-14);
}

TEST(Scattering, PhaseAgreesWithSMatrix) {
    for (const double k : {0.97, 0.9993, 1.0004, 1.02}) {
        const ScatteringPoint p = scattering_point(config(), k);
        EXPECT_NEAR(mod(std::arg(p.S) - 2 * p.delta_a, 2 * pi), 0.0, 1e-8) << k;
        EXPECT_NEAR(p.delta_a, phase_shift(config(), k), 1e-15);
    }
}

TEST(Scattering, DoubletZerosOfReducedJost) {
    // published doublet values, 10 digits
    const cplx k1{0.9989844032, -0.0001730065}, k2{1.0010155756, -0.0001731296};
    // against the real axis directly above; at k = q itself R is 0 / 0
    for (const cplx k : {k1, k2}) {
        const double ref = std::abs(reduced_jost(config(), k.real()));
        EXPECT_LT(std::abs(reduced_jost(config(), k)), 1e-6 * ref) << k;
    }
}

TEST(Scattering, ScaledReducedJostSameZeros) {
    const cplx k{0.9989844032409, -1.730065546050e-4};
    const cplx e = std::exp(cplx{0.0, -1.0} * k * config().a());
    const cplx z{1.003, -0.01};
    const cplx ez = std::exp(cplx{0.0, -1.0} * z * config().a());
    EXPECT_LT(std::abs(reduced_jost_scaled(config(), z) - ez * reduced_jost(config(), z)),
              1e-9 * std::abs(reduced_jost_scaled(config(), z)));
    EXPECT_LT(std::abs(reduced_jost_scaled(config(), k)),
              1e-6 * std::abs(e) * std::abs(reduced_jost(config(), k.real())));
    // deep in the lower half plane the unscaled form overflows
    EXPECT_TRUE(std::isfinite(std::abs(reduced_jost_scaled(config(), {1.0, -0.2}))));
}

TEST(Scattering, JostFunctionMatchesDG) {
    const double k = 0.95;
    const JostPair j = jost_function(config(), k);
    const ScatteringPoint p = scattering_point(config(), k);
    EXPECT_NEAR(std::abs(j.F_minus), std::abs(p.F_minus), 1e-12 * std::abs(j.F_minus));
    // S = F(k) / F(-k) on the real axis
    EXPECT_LT(std::abs(j.F_plus / j.F_minus - p.S), 1e-8);
}

TEST(CrossSection, ZerosMatchOracle) {
    const auto g = refined_grid(0.995, 1.005, 1e-5, 1.0, 0.01, 1e-6);
    const auto z = cross_section_zeros(config(), g);
    std::vector<double> near;
    for (const double x : z) {
        if (std::abs(x - 1.0) < 1e-3) near.push_back(x);
    }
    ASSERT_EQ(near.size(), 2u);
    EXPECT_NEAR(near[0], kSigmaZero1, 1e-10);
    EXPECT_NEAR(near[1], kSigmaZero2, 1e-10);
    for (const double x : near) {
        EXPECT_NEAR(mod(phase_shift(config(), x), pi), 0.0, 1e-8);
        EXPECT_LT(cross_section(config(), x) / (4 * pi / (x * x)), 1e-4);
    }
}

TEST(CrossSection, InterPeakMaximum) {
    const double k = cross_section_maximum(config(), kSigmaZero1, kSigmaZero2);
    EXPECT_NEAR(k, 1.0001, 2e-4);
    const double rel = cross_section(config(), k) / (4 * pi / (k * k));
    EXPECT_GT(rel, 1.0 - 1e-3);
    EXPECT_LE(rel, 1.0);
    EXPECT_NEAR(mod(phase_shift(config(), k) + pi / 2, pi), 0.0, 1e-3);
}

TEST(Phase, RefinedGrid) {
    const auto g = refined_grid(0.99, 1.01, 1e-4, 1.0, 1e-3, 1e-6);
    for (std::size_t i = 1; i < g.size(); ++i) {
        ASSERT_GT(g[i], g[i - 1]);
        const double step = g[i] - g[i - 1];
        if (std::abs(g[i] - 1.0) < 9e-4) EXPECT_LE(step, 1e-6 * (1 + 1e-9));
        EXPECT_LE(step, 1e-4 * (1 + 1e-9));
    }
    EXPECT_EQ(g.front(), 0.99);
    EXPECT_EQ(g.back(), 1.01);
}

TEST(Phase, UnwrappedCurveConsistency) {
    const auto g = refined_grid(0.995, 1.005, 1e-5, 1.0, 0.01, 1e-6);
    const PhaseCurve c = phase_shift_unwrapped(config(), g);
    ASSERT_EQ(c.k.size(), g.size());
    for (std::size_t i = 0; i < g.size(); i += 997) {
        EXPECT_NEAR(mod(c.unwrapped[i] - c.raw[i], pi), 0.0, 1e-9);
        EXPECT_NEAR(c.ramp_removed[i], c.unwrapped[i] + g[i] * 5000.0, 1e-9);
        EXPECT_NEAR(mod(c.physical[i] - physical_phase(config(), g[i]), 2 * pi), 0.0, 1e-9);
    }
    EXPECT_LT(max_reduced_step(c.raw, pi), 1.0 / 3.0);
    // the unwrapped phase falls by about 2 pi across the window; the window
    // edges are not yet at the asymptotic values
    EXPECT_NEAR(c.unwrapped.back() - c.unwrapped.front(), -2 * pi, 0.5);
}

TEST(Phase, CoarseGridRejected) {
    // steps of a quarter period of the -ka ramp, far from the doublet
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(0.9 + 0.5 * pi / 5000.0 * i);
    EXPECT_THROW(phase_shift_unwrapped(config(), g), UnwrapAmbiguity);
    const std::vector<double> bad{1.0, 0.9};
    EXPECT_THROW(phase_shift_unwrapped(config(), bad), UnwrapAmbiguity);
}
