#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ris_secrecy/errors.hpp"
#include "ris_secrecy/monte_carlo.hpp"
#include "ris_secrecy/oracles.hpp"
#include "ris_secrecy/secrecy_analysis.hpp"
#include "ris_secrecy/specfun.hpp"

using namespace ris;
using channel::SystemParams;

namespace {

SystemParams scenario(int n, double snr_d_db, double snr_e_db, double kappa2, double c_th = 1.0) {
    SystemParams p;
    p.n_elements = n;
    p.kappa2_d_t = p.kappa2_d_r = p.kappa2_e_t = p.kappa2_e_r = kappa2;
    p.snr_d_db = snr_d_db;
    p.snr_e_db = snr_e_db;
    p.c_th = c_th;
    return p;
}

double sop_at(const SystemParams& p, int q = 4096) {
    secrecy::NumericsConfig num;
    num.quad_order = q;
    return secrecy::sop(p, channel::derive_stats(p), num).value;
}

double asc_at(const SystemParams& p, int q = 4096, bool fallback = false) {
    secrecy::NumericsConfig num;
    num.quad_order = q;
    num.ideal_hardware_fallback = fallback;
    return secrecy::avg_secrecy_capacity(p, channel::derive_stats(p), num).value;
}

std::vector<double> snr_grid() {
    std::vector<double> g;
    for (double v = -10.0; v <= 30.0; v += 2.0) g.push_back(v);
    return g;
}

}  // namespace

TEST(Theta, IdealHardware) {
    const auto t = secrecy::theta_coefficients(scenario(5, 0, 0, 0.0));
    EXPECT_DOUBLE_EQ(t.gamma_th, 2.0);
    EXPECT_DOUBLE_EQ(t.vartheta, 1.0);
    EXPECT_DOUBLE_EQ(t.theta1, 2.0);
    EXPECT_DOUBLE_EQ(t.theta2, 0.0);
    EXPECT_DOUBLE_EQ(t.theta3, 1.0);
    EXPECT_DOUBLE_EQ(t.theta4, 0.0);
}

TEST(Theta, OnePercentImpairmentLevels) {
    const auto t = secrecy::theta_coefficients(scenario(5, 0, 0, 0.01));
    EXPECT_NEAR(t.vartheta, 1.0, 1e-15);
    EXPECT_NEAR(t.theta1, 2.02, 1e-15);
    EXPECT_NEAR(t.theta2, 0.0204, 1e-15);
    EXPECT_NEAR(t.theta3, 0.98, 1e-15);
    EXPECT_NEAR(t.theta4, 0.02, 1e-15);
    EXPECT_NEAR(1.0 / t.theta4, 50.0, 1e-12);
}

TEST(Theta, SmallTargetRate) {
    const auto t = secrecy::theta_coefficients(scenario(5, 0, 0, 0.01, 1e-12));
    EXPECT_NEAR(t.gamma_th, 1.0, 1e-11);
    EXPECT_NEAR(t.vartheta, 0.0, 1e-11);
}

TEST(ChebyshevRule, IntegratesPolynomialsTimesWeight) {
    // The rule is the midpoint rule in t = acos(phi): second order for smooth f,
    // exact when f(phi) sqrt(1 - phi^2)^{-1} is a low-degree polynomial.
    const auto rule = secrecy::gauss_chebyshev(400);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    EXPECT_NEAR(s, 2.0 / 3.0, 1e-4);
    // sqrt(1 - phi^2) = w / (pi/Q) integrates (1 - phi^2)^{1/2} (1 - phi^2)^{-1/2} = 1 exactly.
    double ones = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        ones += rule.weights[i] / std::sqrt(1.0 - rule.nodes[i] * rule.nodes[i]);
    }
    EXPECT_NEAR(ones, std::numbers::pi, 1e-12);
    EXPECT_THROW(secrecy::gauss_chebyshev(0), invalid_parameter);
}

TEST(Sop, VanishingLegitimateSnrMeansCertainOutage) {
    EXPECT_NEAR(sop_at(scenario(5, -60.0, -10.0, 0.01)), 1.0, 1e-4);
}

TEST(Sop, UnreachableTargetSaturates) {
    // vartheta kappa2_d >= 1: theta3 <= 0.
    const auto p = scenario(5, 10.0, -10.0, 0.3, 2.0);
    const auto r = secrecy::sop(p, channel::derive_stats(p));
    EXPECT_TRUE(r.saturated);
    EXPECT_EQ(r.value, 1.0);
}

TEST(Sop, MoreElementsLowerOutage) {
    EXPECT_LT(sop_at(scenario(10, 10.0, -10.0, 0.01)), sop_at(scenario(5, 10.0, -10.0, 0.01)));
}

TEST(Sop, MatchesQuadratureOracle) {
    for (int n : {1, 5, 10}) {
        for (double snr_d : {-5.0, 0.0, 10.0, 20.0}) {
            for (double snr_e : {-10.0, 0.0, 10.0}) {
                for (double k : {0.0, 0.01, 0.05}) {
                    const auto p = scenario(n, snr_d, snr_e, k);
                    EXPECT_NEAR(sop_at(p, 8192), oracle::sop(p), 1e-6)
                        << "N=" << n << " " << snr_d << "/" << snr_e << " k=" << k;
                }
            }
        }
    }
}

TEST(Sop, CertainOutageMassBeyondThePole) {
    // Strong eavesdropper: Pr(rho_E > theta3/theta2) is no longer negligible.
    const auto p = scenario(10, 10.0, 0.0, 0.01);
    const auto r = secrecy::sop(p, channel::derive_stats(p));
    const auto t = secrecy::theta_coefficients(p);
    EXPECT_NEAR(r.upper_limit, t.theta3 / t.theta2, 1e-12);
    EXPECT_NEAR(r.beyond_pole, std::exp(-t.theta3 / t.theta2 / 10.0), 1e-15);
    EXPECT_GT(r.beyond_pole, 1e-3);
}

TEST(Sop, NegativeTheta2UsesTailTruncation) {
    auto p = scenario(5, 10.0, 0.0, 0.0);
    p.kappa2_e_t = p.kappa2_e_r = 0.05;
    const auto t = secrecy::theta_coefficients(p);
    ASSERT_LT(t.theta2, 0.0);
    const auto r = secrecy::sop(p, channel::derive_stats(p));
    EXPECT_EQ(r.beyond_pole, 0.0);
    EXPECT_NEAR(sop_at(p, 8192), oracle::sop(p), 1e-6);
}

TEST(Sop, AgreesWithApproximatedLawMonteCarlo) {
    mc::McConfig cfg;
    cfg.trials = 2'000'000;
    cfg.seed = 17;
    cfg.law = mc::ChannelLaw::approximated;
    const auto p = scenario(5, 10.0, -10.0, 0.01);
    const auto e = mc::estimate_sop(p, cfg);
    EXPECT_LE(std::abs(sop_at(p) - e.value), 3.0 * e.std_error);
}

TEST(Sop, RangeProperty) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> n_dist(1, 30);
    std::uniform_real_distribution<double> snr(-20.0, 40.0);
    std::uniform_real_distribution<double> kap(0.0, 0.2);
    std::uniform_real_distribution<double> cth(0.05, 4.0);
    for (int i = 0; i < 200; ++i) {
        auto p = scenario(n_dist(rng), snr(rng), snr(rng), 0.0, cth(rng));
        p.kappa2_d_t = kap(rng);
        p.kappa2_d_r = kap(rng);
        p.kappa2_e_t = kap(rng);
        p.kappa2_e_r = kap(rng);
        const double v = sop_at(p, 200);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Sop, Monotonicity) {
    double prev = 2.0;
    for (double s : snr_grid()) {
        const double v = sop_at(scenario(5, s, -10.0, 0.01));
        EXPECT_LE(v, prev) << s;
        prev = v;
    }
    prev = -1.0;
    for (double e : {-20.0, -10.0, 0.0, 10.0, 20.0}) {
        const double v = sop_at(scenario(5, 10.0, e, 0.01));
        EXPECT_GE(v, prev) << e;
        prev = v;
    }
    prev = -1.0;
    for (double c : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const double v = sop_at(scenario(5, 10.0, -10.0, 0.01, c));
        EXPECT_GE(v, prev) << c;
        prev = v;
    }
}

TEST(Sop, ElementGainOnTheGrid) {
    for (double s : snr_grid()) {
        EXPECT_LE(sop_at(scenario(10, s, -10.0, 0.01)), sop_at(scenario(5, s, -10.0, 0.01))) << s;
    }
}

TEST(Quadrature, ErrorFallsAsInverseSquareOfOrder) {
    // The integrand does not vanish at the interval ends, so the rule is second order.
    const auto p = scenario(5, 0.0, -10.0, 0.01);
    const double ref = oracle::sop(p);
    const double e1 = std::abs(sop_at(p, 200) - ref);
    const double e2 = std::abs(sop_at(p, 400) - ref);
    const double e3 = std::abs(sop_at(p, 800) - ref);
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
    EXPECT_NEAR(e2 / e3, 4.0, 0.4);
}

TEST(Quadrature, DoublingBoundReachedAtLargeOrder) {
    for (const auto& p : {scenario(5, 10.0, -10.0, 0.01), scenario(10, 0.0, 0.0, 0.01)}) {
        EXPECT_LT(std::abs(sop_at(p, 8192) - sop_at(p, 4096)), 1e-7);
        EXPECT_LT(std::abs(asc_at(p, 32768) - asc_at(p, 16384)), 1e-7);
    }
}

TEST(SopAsymptotic, MatchesQuadratureOracle) {
    for (int n : {5, 10}) {
        for (double snr_d : {10.0, 30.0}) {
            for (double k : {0.01, 0.1}) {
                const auto p = scenario(n, snr_d, -10.0, k);
                secrecy::NumericsConfig num;
                num.quad_order = 8192;
                EXPECT_NEAR(secrecy::sop_asymptotic(p, channel::derive_stats(p), num),
                            oracle::sop_asymptotic(p), 1e-6);
            }
        }
    }
}

TEST(SopAsymptotic, SelfConvergence) {
    const auto p = scenario(5, 30.0, -10.0, 0.01);
    secrecy::NumericsConfig a, b;
    a.quad_order = 50;
    b.quad_order = 400;
    const auto s = channel::derive_stats(p);
    // Second-order rule: the 50 -> 400 change is bounded by the 50-node error.
    EXPECT_LT(std::abs(secrecy::sop_asymptotic(p, s, a) - secrecy::sop_asymptotic(p, s, b)), 1e-4);
}

TEST(SopAsymptotic, GapShrinksWithSnr) {
    const auto gap = [](double snr_d) {
        const auto p = scenario(5, snr_d, -10.0, 0.01);
        const auto s = channel::derive_stats(p);
        secrecy::NumericsConfig num;
        num.quad_order = 4096;
        const double exact = secrecy::sop(p, s, num).value;
        return std::abs(exact - secrecy::sop_asymptotic(p, s, num)) / exact;
    };
    EXPECT_LT(gap(30.0), gap(10.0));
}

TEST(SopAsymptotic, RequiresPositiveTheta4) {
    const auto p = scenario(5, 30.0, -10.0, 0.0);
    EXPECT_THROW(secrecy::sop_asymptotic(p, channel::derive_stats(p)), unsupported_regime);
}

TEST(EavesdropperRate, PrintedFormMatchesUnsaturatedQuadrature) {
    for (double lambda_e : {0.05, 0.2, 1.0, 5.0, 20.0}) {
        for (double k : {0.005, 0.01, 0.05, 0.2}) {
            auto p = scenario(1, 0.0, 10.0 * std::log10(lambda_e), 0.0);
            p.kappa2_e_t = p.kappa2_e_r = k / 2.0;
            const auto s = channel::derive_stats(p);
            EXPECT_NEAR(secrecy::eavesdropper_rate(p, s, secrecy::EavesdropperRateForm::printed),
                        oracle::eavesdropper_rate_unsaturated(s.lambda_e, k), 1e-9)
                << lambda_e << " " << k;
        }
    }
}

TEST(EavesdropperRate, SaturatedFormMatchesSndrQuadrature) {
    for (double snr_e : {-10.0, 0.0, 10.0, 25.0}) {
        for (double k : {0.0, 0.01, 0.1}) {
            const auto p = scenario(5, 0.0, snr_e, k);
            EXPECT_NEAR(secrecy::eavesdropper_rate(p, channel::derive_stats(p)),
                        oracle::eavesdropper_rate(p), 1e-9)
                << snr_e << " " << k;
        }
    }
}

TEST(EavesdropperRate, SaturationMakesADifference) {
    const auto p = scenario(5, 0.0, 0.0, 0.01);
    const auto s = channel::derive_stats(p);
    const double exact = secrecy::eavesdropper_rate(p, s);
    const double printed = secrecy::eavesdropper_rate(p, s, secrecy::EavesdropperRateForm::printed);
    EXPECT_GT(printed, exact);
    EXPECT_GT(printed - exact, 0.01);
    EXPECT_GE(exact, 0.0);
}

TEST(LegitimateRate, BoundedBySaturation) {
    for (double s : snr_grid()) {
        const auto p = scenario(5, s, -10.0, 0.01);
        secrecy::NumericsConfig num;
        const double rd = secrecy::legitimate_rate(p, channel::derive_stats(p), num);
        EXPECT_LE(rd, std::log2(51.0)) << s;
        EXPECT_GE(rd, 0.0);
    }
    EXPECT_NEAR(std::log2(51.0), 5.672, 1e-3);
}

TEST(LegitimateRate, MatchesQuadratureOracle) {
    for (int n : {1, 5, 10}) {
        for (double snr_d : {-10.0, 0.0, 10.0, 20.0, 30.0}) {
            const auto p = scenario(n, snr_d, 0.0, 0.01);
            secrecy::NumericsConfig num;
            num.quad_order = 8192;
            EXPECT_NEAR(secrecy::legitimate_rate(p, channel::derive_stats(p), num),
                        oracle::legitimate_rate(p), 1e-6)
                << n << " " << snr_d;
        }
    }
}

TEST(Capacity, IdealHardwareNeedsFallback) {
    const auto p = scenario(5, 10.0, -10.0, 0.0);
    EXPECT_THROW(asc_at(p), unsupported_regime);
    secrecy::NumericsConfig num;
    num.quad_order = 8192;
    num.ideal_hardware_fallback = true;
    const auto r = secrecy::avg_secrecy_capacity(p, channel::derive_stats(p), num);
    EXPECT_NEAR(r.r_d, oracle::legitimate_rate(p), 1e-6);
    EXPECT_NEAR(r.r_e, oracle::eavesdropper_rate(p), 1e-9);
}

TEST(Capacity, ContinuousAsImpairmentVanishes) {
    const auto ideal = asc_at(scenario(5, 10.0, -10.0, 0.0), 8192, true);
    const auto tiny = asc_at(scenario(5, 10.0, -10.0, 1e-7), 8192, true);
    EXPECT_NEAR(tiny, ideal, 1e-4);
}

TEST(Capacity, PartsAndMonotonicity) {
    double prev = -1e9;
    for (double s : snr_grid()) {
        const auto p = scenario(5, s, -10.0, 0.01);
        secrecy::NumericsConfig num;
        num.quad_order = 4096;
        const auto r = secrecy::avg_secrecy_capacity(p, channel::derive_stats(p), num);
        EXPECT_DOUBLE_EQ(r.value, r.r_d - r.r_e);
        EXPECT_GE(r.value, prev) << s;
        prev = r.value;
    }
}

TEST(Capacity, AgreesWithApproximatedLawMonteCarlo) {
    mc::McConfig cfg;
    cfg.trials = 2'000'000;
    cfg.seed = 23;
    cfg.law = mc::ChannelLaw::approximated;
    const auto p = scenario(5, 10.0, -10.0, 0.01);
    const auto e = mc::estimate_asc(p, cfg);
    EXPECT_LE(std::abs(asc_at(p) - e.value), 3.0 * e.std_error);
}

TEST(Numerics, Validation) {
    secrecy::NumericsConfig n;
    EXPECT_NO_THROW(n.validate());
    n.quad_order = 1;
    EXPECT_THROW(n.validate(), invalid_parameter);
    n = {};
    n.tail_eps = 0.0;
    EXPECT_THROW(n.validate(), invalid_parameter);
}
