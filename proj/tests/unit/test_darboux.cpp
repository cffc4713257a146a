#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bicres/darboux.hpp"
#include "bicres/errors.hpp"

using namespace bicres;

namespace {

// tests/oracles/oracles.py: 4x4 Wronskian of d^j/dq^j sin(qr + arctan(q - 3))
// and -2 (ln W1)'' at 60 digits.
struct Point {
    double r, w1, v4;
};
constexpr Point kOracle[] = {
    {0.0, 4.32, 19.555555555555556},
    {0.5, 11.504813100339769, -9.121666398458755},
    {1.0, 53.428436629071438, 3.2817217269037193},
    {2.5, 690.49495769104138, 0.34080108221562062},
    {7.25, 48133.150996296399, 0.36605648874305935},
};

const PotentialParams kDefault = PotentialParams::bic(1.0, 1.0);

}  // namespace

TEST(Params, Validation) {
    EXPECT_THROW(PotentialParams::strict(1.0, -1.0, 1.0), ValidationError);
    EXPECT_THROW(PotentialParams::strict(1.0, 3.0, 0.0), ValidationError);
    EXPECT_THROW(PotentialParams::diagnostic(1.0, 0.0, 1.0), ValidationError);
    EXPECT_NO_THROW(PotentialParams::diagnostic(1.0, -1.0, 1.0));
    EXPECT_TRUE(kDefault.bic_mode());
    EXPECT_DOUBLE_EQ(kDefault.beta(), 3.0);
    EXPECT_FALSE(PotentialParams::strict(1.0, 5.0, 1.0).bic_mode());
}

TEST(Phase, DefaultValues) {
    const PhaseData p = phase_data(kDefault);
    EXPECT_NEAR(p.delta, -1.1071487177940905, 1e-15);
    EXPECT_NEAR(p.gamma0, 0.2, 1e-15);
    EXPECT_NEAR(p.gamma1, 0.16, 1e-15);
    EXPECT_NEAR(p.gamma2, 0.176, 1e-15);
}

TEST(Phase, DerivativesMatchFiniteDifferences) {
    auto delta = [](double q) { return phase_data(PotentialParams::strict(1.0, 3.0, q)).delta; };
    const PhaseData p = phase_data(kDefault);
    EXPECT_NEAR(p.gamma1, (delta(1.0 + 1e-3) - 2 * delta(1.0) + delta(1.0 - 1e-3)) / 1e-6, 1e-5);
}

TEST(W1, MatchesWronskianOracle) {
    for (const Point& p : kOracle) {
        EXPECT_NEAR(w1_bundle(kDefault, p.r).w1 / p.w1, 1.0, 1e-13) << p.r;
    }
    EXPECT_DOUBLE_EQ(w1_at_origin(kDefault), 4.32);
}

TEST(W1, TwoFormsAgree) {
    for (double r = 0.0; r <= 200.0; r += 0.37) {
        const double a = w1_bundle(kDefault, r).w1;
        EXPECT_LT(std::abs(w1_generic(kDefault, r) - a) / std::abs(a), 1e-12) << r;
    }
    const auto neg = PotentialParams::diagnostic(1.0, -1.0, 1.0);
    for (double r = 0.0; r <= 20.0; r += 0.53) {
        const double a = w1_bundle(neg, r).w1;
        EXPECT_LT(std::abs(w1_generic(neg, r) - a), 1e-12 * (1.0 + std::abs(a))) << r;
    }
}

TEST(W1, LargeRadius) {
    const double r = 1e3;
    EXPECT_NEAR(w1_bundle(kDefault, r).w1 / (16.0 * std::pow(r, 4)), 1.0, 10.0 / r);
}

TEST(W1, SignScan) {
    EXPECT_TRUE(scan_w1_sign(kDefault, 100.0, 0.01).empty());
    EXPECT_TRUE(scan_w1_sign(PotentialParams::strict(1.0, 5.0, 1.0), 100.0, 0.01).empty());
    const auto zeros = scan_w1_sign(PotentialParams::diagnostic(1.0, -1.0, 1.0), 10.0, 0.01);
    ASSERT_FALSE(zeros.empty());
    EXPECT_LT(std::abs(w1_bundle(PotentialParams::diagnostic(1.0, -1.0, 1.0), zeros[0].root).w1),
              1e-8);
}

TEST(V4, MatchesOracle) {
    for (const Point& p : kOracle) {
        EXPECT_NEAR(potential_v4(kDefault, p.r), p.v4, 1e-10 * (1.0 + std::abs(p.v4))) << p.r;
    }
    EXPECT_NEAR(potential_v4(kDefault, 0.0), 176.0 / 9.0, 1e-12);
    EXPECT_NEAR(potential_v4(kDefault, 0.0), 19.55, 0.01);
}

TEST(V4, TwoFormsAgree) {
    for (double r = 0.0; r <= 100.0; r += 0.29) {
        const double a = potential_v4(kDefault, r);
        EXPECT_NEAR(potential_v4_log(kDefault, r), a, 1e-10 * (1.0 + std::abs(a))) << r;
    }
}

TEST(V4, FirstOscillationMaximum) {
    // oracle: maximum at r = 1.2696510784714, V = 4.43006608000168
    double best = -INFINITY, at = 0.0;
    for (double r = 0.8; r <= 2.0; r += 1e-5) {
        const double v = potential_v4(kDefault, r);
        if (v > best) best = v, at = r;
    }
    EXPECT_NEAR(at, 1.2696510784714, 1e-4);
    EXPECT_NEAR(best, 4.43006608000168, 1e-8);
    EXPECT_NEAR(best, 4.43, 0.01);
}

TEST(V4, EnvelopeDecaysAsInverseR) {
    double hi = 0.0;
    for (double lo_r = 100.0; lo_r < 1000.0; lo_r += 100.0) {
        double peak = 0.0;
        for (double r = lo_r; r < lo_r + 2 * 3.1416; r += 0.01) {
            peak = std::max(peak, std::abs(potential_v4(kDefault, r)) * r);
        }
        EXPECT_GT(peak, 1.0);
        hi = std::max(hi, peak);
    }
    EXPECT_LT(hi, 20.0);
}

TEST(V4, SingularNearZeroOfW1) {
    const auto neg = PotentialParams::diagnostic(1.0, -1.0, 1.0);
    const auto zeros = scan_w1_sign(neg, 10.0, 0.01);
    ASSERT_FALSE(zeros.empty());
    EXPECT_THROW(potential_v4(neg, zeros[0].root), SingularPotential);
}
