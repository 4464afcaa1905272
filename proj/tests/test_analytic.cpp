#include "dks/analytic.hpp"
#include "dks/fock.hpp"
#include "dks/optimizer.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace dks;
using namespace dks::testing;

TEST(Analytic, GFactorsAtZeroLength) {
    const GFactors g = g_factors({cplx(7.0, 2.0), 0.0});
    EXPECT_EQ(g.g1, cplx(1.0, 0.0));
    EXPECT_EQ(g.g2, cplx(1.0, 0.0));
}

TEST(Analytic, GModulusIdentity) {
    for (int trial = 0; trial < 100; ++trial) {
        const cplx a = random_complex(50.0);
        const double kz = uniform(0.0, 1.0);
        const GFactors g = g_factors({a, kz});
        const double a2 = std::norm(a);
        EXPECT_NEAR(std::abs(g.g1), std::exp(a2 * (std::cos(2.0 * kz) - 1.0)), 1e-12);
        EXPECT_NEAR(std::abs(g.g2), std::exp(a2 * (std::cos(4.0 * kz) - 1.0)), 1e-12);
        EXPECT_LE(std::abs(g.g1), 1.0 + 1e-15);
    }
}

TEST(Analytic, G1MatchesFockMeanField) {
    const cplx a = 2.0;
    const double kz = 0.1;
    const FockState k = kerr_evolve(coherent_state(a), kz);
    const cplx mean = field_moment(k, 0, 1);
    const cplx i(0.0, 1.0);
    const cplx g1 = mean / (a * std::exp(i * kz) * std::exp(2.0 * i * std::norm(a) * kz));
    EXPECT_LT(std::abs(g_factors({a, kz}).g1 - g1), 1e-10);

    const ClosedFormMoments m = closed_form_moments({a, kz});
    EXPECT_LT(std::abs(m.a - mean), 1e-10);
    EXPECT_LT(std::abs(m.a2 - field_moment(k, 0, 2)), 1e-10);
    EXPECT_LT(std::abs(m.ad_a2 - field_moment(k, 1, 2)), 1e-10);
    EXPECT_NEAR(m.n_mean, 4.0, 1e-15);
}

TEST(Analytic, SmallLengthKeepsRelativeAccuracy) {
    // g1 rounds to 1 here; the Fano coefficients must still carry their leading small-Kz terms:
    // radial = 2(1 - |g1|^2) ~ 8|a|^2 Kz^2, |linear| = 4 |sin Kz| |g1| ~ 4 Kz.
    const double a2 = 100.0;
    for (double kz : {1e-9, 1e-7, 1e-5}) {
        const FanoForm f = fano_form({10.0, kz});
        EXPECT_NEAR(f.radial, 8.0 * a2 * kz * kz, 1e-6 * 8.0 * a2 * kz * kz);
        EXPECT_NEAR(std::abs(f.linear), 4.0 * kz, 1e-6 * 4.0 * kz);
        EXPECT_GT(std::abs(f.quadratic), 0.0);
        // F - 1 ~ 2|a|^2 Re(beta linear) for a small perpendicular shift stays resolvable.
        const double excess = fano_displaced(f, cplx(0.0, -1e-3)).fano - 1.0;
        EXPECT_NEAR(excess, -2.0 * a2 * 4.0 * kz * 1e-3, 2e-3 * 8.0 * a2 * kz * 1e-3);
    }
}

TEST(Analytic, ZeroLengthOrZeroShiftIsPoissonian) {
    for (int trial = 0; trial < 30; ++trial) {
        const cplx a = random_complex(100.0) + 0.1;
        const cplx beta = random_complex(3.0);
        EXPECT_EQ(fano_displaced(KerrScenario{a, 0.0}, DisplacementSetting{1.0, beta}).fano, 1.0);
        EXPECT_EQ(fano_displaced(KerrScenario{a, uniform(0.0, 0.1)}, DisplacementSetting{1.0, 0.0}).fano, 1.0);
    }
}

TEST(Analytic, DependsOnAlphaOnlyThroughModulus) {
    for (int trial = 0; trial < 20; ++trial) {
        const double mag = uniform(1.0, 80.0);
        const double kz = uniform(0.0, 1.0) / (mag * mag);
        const cplx beta = random_complex(0.3);
        const double f0 = fano_displaced(KerrScenario{mag, kz}, DisplacementSetting{1.0, beta}).fano;
        const double f1 = fano_displaced(KerrScenario{std::polar(mag, uniform(-M_PI, M_PI)), kz}, DisplacementSetting{1.0, beta}).fano;
        EXPECT_NEAR(f0, f1, 1e-12);
    }
}

TEST(Analytic, TransmissionScalesExcess) {
    for (int trial = 0; trial < 20; ++trial) {
        const double mag = uniform(2.0, 60.0);
        const KerrScenario sc{mag, uniform(0.0, 1.0) / (mag * mag)};
        const cplx beta = random_complex(0.3);
        const double tau = uniform(0.1, 1.0);
        const double f1 = fano_displaced(sc, {1.0, beta}).fano;
        const double ft = fano_displaced(sc, {tau, beta}).fano;
        EXPECT_NEAR(ft - 1.0, tau * tau * (f1 - 1.0), 1e-12 * std::max(1.0, std::abs(f1 - 1.0)));
    }
}

TEST(Analytic, OptimalShiftExamples) {
    {
        const KerrScenario sc{10.0, 0.0218};
        const Optimum opt = optimize_beta(sc);
        const FanoReport r = fano_displaced(sc, {1.0, opt.beta_opt});
        EXPECT_REL_NEAR(r.fano, 0.0203, 0.02);
        EXPECT_REL_NEAR(r.mean_photon, 98.6, 0.005);
        EXPECT_NEAR(r.suppression_db, -16.9, 0.05);
    }
    {
        const KerrScenario sc{100.0, 0.00102};
        const Optimum opt = optimize_beta(sc);
        const FanoReport r = fano_displaced(sc, {1.0, opt.beta_opt});
        EXPECT_REL_NEAR(r.fano, 0.000892, 0.02);
        EXPECT_NEAR(r.suppression_db, -30.5, 0.05);
    }
}

TEST(Analytic, ReportIsConsistent) {
    for (int trial = 0; trial < 50; ++trial) {
        const double mag = uniform(1.0, 50.0);
        const KerrScenario sc{mag, uniform(0.0, 2.0) / (mag * mag)};
        const FanoReport r = fano_displaced(sc, {1.0, random_complex(0.5)});
        EXPECT_GT(r.mean_photon, 0.0);
        EXPECT_GE(r.variance, 0.0);
        EXPECT_NEAR(r.fano, r.variance / r.mean_photon, 1e-12 * std::max(1.0, r.fano));
        EXPECT_NEAR(r.mandel_q, r.fano - 1.0, 1e-15);
        EXPECT_NEAR(r.suppression_db, 10.0 * std::log10(r.fano), 1e-12);
    }
}

TEST(Analytic, DegenerateDenominator) {
    // At kz = 0, beta = -1 cancels the field exactly.
    EXPECT_DKS_ERROR(fano_displaced(KerrScenario{5.0, 0.0}, DisplacementSetting{1.0, -1.0}), ErrorCode::DegenerateDenominator);
}

TEST(Analytic, InvalidInputs) {
    EXPECT_DKS_ERROR(fano_displaced(KerrScenario{5.0, -0.1}, DisplacementSetting{1.0, 0.1}), ErrorCode::InvalidArgument);
    EXPECT_DKS_ERROR(fano_displaced(KerrScenario{5.0, 0.1}, DisplacementSetting{0.0, 0.1}), ErrorCode::InvalidArgument);
    EXPECT_DKS_ERROR(fano_displaced(KerrScenario{5.0, 0.1}, DisplacementSetting{1.5, 0.1}), ErrorCode::InvalidArgument);
    EXPECT_DKS_ERROR(fano_displaced(KerrScenario{5.0, std::nan("")}, DisplacementSetting{1.0, 0.1}), ErrorCode::InvalidArgument);
}

TEST(Analytic, RawParametersRoundTrip) {
    for (int trial = 0; trial < 30; ++trial) {
        const KerrScenario sc{random_complex(30.0) + 1.0, uniform(0.0, 0.01)};
        const double tau = uniform(0.5, 0.9);
        const cplx rho = random_complex(0.4);
        const cplx alpha0 = random_complex(200.0);
        const DisplacementSetting s = DisplacementSetting::from_raw(sc, rho, alpha0, tau);
        EXPECT_LT(std::abs(s.shift_amplitude(sc) - rho * alpha0), 1e-10 * std::max(1.0, std::abs(rho * alpha0)));
        EXPECT_EQ(s.tau, tau);
    }
    EXPECT_DKS_ERROR(DisplacementSetting::from_raw({5.0, 0.1}, 0.8, 1.0, 0.8), ErrorCode::InvalidArgument);
    EXPECT_DKS_ERROR(DisplacementSetting::from_raw({0.0, 0.1}, 0.1, 1.0, 0.9), ErrorCode::InvalidArgument);
}

TEST(Analytic, FormEvaluationMatchesScenario) {
    for (int trial = 0; trial < 20; ++trial) {
        const double mag = uniform(2.0, 80.0);
        const KerrScenario sc{mag, uniform(0.0, 2.0) / (mag * mag)};
        const double tau = uniform(0.3, 1.0);
        const cplx beta = random_complex(0.5);
        EXPECT_NEAR(fano_displaced(fano_form(sc, tau), beta).fano, fano_displaced(sc, {tau, beta}).fano, 1e-14);
    }
}
