#include "dks/approximations.hpp"
#include "dks/optimizer.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace dks;
using namespace dks::testing;

TEST(Optimizer, FixedLengthExamples) {
    {
        const Optimum o = optimize_beta({10.0, 0.0218});
        EXPECT_REL_NEAR(o.fano_min, 0.0203, 0.02);
        EXPECT_REL_NEAR(o.beta_magnitude, 0.123, 0.05);
    }
    {
        const Optimum o = optimize_beta({50.0, 0.00257});
        EXPECT_REL_NEAR(o.fano_min, 0.00226, 0.02);
        EXPECT_REL_NEAR(o.beta_magnitude, 0.0401, 0.05);
    }
}

TEST(Optimizer, ZeroLengthNeedsNoShift) {
    const Optimum o = optimize_beta({10.0, 0.0});
    EXPECT_EQ(o.fano_min, 1.0);
    EXPECT_EQ(o.beta_opt, cplx(0.0, 0.0));
}

TEST(Optimizer, LengthSearchExamples) {
    {
        const Optimum o = optimize_length(30.0);
        EXPECT_REL_NEAR(o.kz, 0.00511, 0.02);
        EXPECT_REL_NEAR(o.fano_min, 0.00449, 0.02);
        EXPECT_NEAR(o.suppression_db, -23.5, 0.05);
    }
    {
        const Optimum o = optimize_length(100.0);
        EXPECT_REL_NEAR(o.kz, 0.00102, 0.02);
        EXPECT_REL_NEAR(o.fano_min, 0.000892, 0.02);
    }
    EXPECT_DKS_ERROR(optimize_length(1.5), ErrorCode::InvalidArgument);
}

TEST(Optimizer, SubPoissonianBelowTwiceOptimum) {
    for (double a : {10.0, 30.0, 100.0}) {
        const double top = 2.0 * kz_opt_approx(a);
        for (int j = 1; j <= 8; ++j) {
            const Optimum o = optimize_beta({a, top * j / 8.0});
            EXPECT_LT(o.fano_min, 1.0) << "alpha=" << a << " j=" << j;
            EXPECT_GT(o.fano_min, 0.0);
        }
    }
}

TEST(Optimizer, RayleighBoundIsTight) {
    EXPECT_EQ(rayleigh_lower_bound({10.0, 0.0}), 1.0);
    {
        const double bound = rayleigh_lower_bound({10.0, 0.0218});
        const double direct = optimize_beta({10.0, 0.0218}).fano_min;
        EXPECT_LE(bound, direct + 1e-12);
        EXPECT_REL_NEAR(bound, direct, 0.05);
    }
    {
        const Optimum o = optimize_length(50.0);
        const double bound = rayleigh_lower_bound({50.0, o.kz});
        EXPECT_REL_NEAR(bound, o.fano_min, 0.05);
    }
}

TEST(Optimizer, RayleighBoundNeverExceedsDirectMinimum) {
    for (int trial = 0; trial < 25; ++trial) {
        const double mag = uniform(2.0, 120.0);
        const KerrScenario sc{std::polar(mag, uniform(-M_PI, M_PI)), uniform(0.05, 3.0) / (mag * mag)};
        const RayleighSolution r = rayleigh_solution(sc);
        const double direct = optimize_beta(sc).fano_min;
        EXPECT_LE(r.bound, direct + 1e-9 * direct) << "alpha=" << mag << " kz=" << sc.kz;
        ASSERT_TRUE(r.beta.has_value());
        EXPECT_NEAR(fano_displaced(sc, {1.0, *r.beta}).fano, r.bound, 1e-9 * std::max(1.0, r.bound));
        EXPECT_NEAR(r.bound, direct, 1e-7 * direct);
    }
}

TEST(Optimizer, ShiftIsNearlyPerpendicularToMeanField) {
    for (double a : {10.0, 30.0, 50.0, 100.0}) {
        const Optimum o = optimize_length(a);
        const cplx g1 = g_factors({a, o.kz}).g1;
        const double cosang = (o.beta_opt.real() * g1.real() + o.beta_opt.imag() * g1.imag()) /
                              (std::abs(o.beta_opt) * std::abs(g1));
        EXPECT_LT(std::abs(cosang), 0.35) << "alpha=" << a;
    }
}

TEST(Optimizer, ScalingBands) {
    for (double a : {10.0, 20.0, 50.0, 100.0}) {
        const Optimum o = optimize_length(a);
        const double a43 = std::pow(a, 4.0 / 3.0);
        EXPECT_GT(o.fano_min * a43, 0.35) << a;
        EXPECT_LT(o.fano_min * a43, 0.45) << a;
        EXPECT_GT(o.kz * a43, 0.45) << a;
        EXPECT_LT(o.kz * a43, 0.50) << a;
    }
}

TEST(Optimizer, SweepAgreesAcrossExecutionModes) {
    std::vector<double> kz;
    for (int j = 0; j <= 20; ++j)
        kz.push_back(0.0002 * j);
    OptimizerConfig seq;
    OptimizerConfig par;
    par.parallelism = 4;
    const auto a = sweep_length(50.0, kz, seq);
    const auto b = sweep_length(50.0, kz, par);
    ASSERT_EQ(a.size(), kz.size());
    ASSERT_EQ(b.size(), kz.size());
    EXPECT_EQ(a[0].fano_min, 1.0);
    for (std::size_t i = 0; i < kz.size(); ++i) {
        EXPECT_EQ(a[i].kz, kz[i]);
        EXPECT_NEAR(a[i].fano_min, b[i].fano_min, 1e-12 * std::max(1.0, a[i].fano_min) + 1e-14);
        EXPECT_NEAR(a[i].fano_min, optimize_beta({50.0, kz[i]}).fano_min, 1e-12);
    }
}

TEST(Optimizer, SweepMinimumNearTabulatedLength) {
    std::vector<double> kz;
    for (int j = 0; j <= 60; ++j)
        kz.push_back(0.001 + 0.0025 * j / 60.0);
    const auto r = sweep_length(50.0, kz);
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i].fano_min < r[best].fano_min)
            best = i;
    EXPECT_NEAR(kz[best], 0.00257, 0.0025 / 60.0 + 1e-6);
}

TEST(Optimizer, SweepValidation) {
    EXPECT_DKS_ERROR(sweep_length(10.0, {0.02, 0.01}), ErrorCode::InvalidArgument);
    EXPECT_DKS_ERROR(sweep_length(10.0, {-0.01, 0.01}), ErrorCode::InvalidArgument);
}

TEST(Optimizer, GridBelowMinimumRejected) {
    OptimizerConfig cfg;
    cfg.grid_angles = 16;
    EXPECT_DKS_ERROR(optimize_beta({10.0, 0.02}, cfg), ErrorCode::InvalidArgument);
}

TEST(Optimizer, IterationCapRaisesNonConvergence) {
    OptimizerConfig cfg;
    cfg.simplex_max_iterations = 2;
    EXPECT_DKS_ERROR(optimize_beta({10.0, 0.0218}, cfg), ErrorCode::NonConvergence);
}

TEST(Optimizer, CrossoverNearTwelveDecibels) {
    for (double a : {30.0, 50.0, 100.0}) {
        const double f = optimize_beta({a, kz_app(a * a)}).fano_min;
        EXPECT_NEAR(db(f), -12.1, 0.2) << a;
    }
}

TEST(Optimizer, NelderMeadFindsQuadraticMinimum) {
    const auto r = nelder_mead_2d([](double x, double y) { return (x - 1.5) * (x - 1.5) + 3.0 * (y + 0.5) * (y + 0.5) + 2.0; },
                                  {0.0, 0.0}, {0.3, 0.3}, 1e-16, 1000);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x[0], 1.5, 1e-6);
    EXPECT_NEAR(r.x[1], -0.5, 1e-6);
    EXPECT_NEAR(r.f, 2.0, 1e-12);
}

TEST(Optimizer, NelderMeadReportsCap) {
    const auto r = nelder_mead_2d([](double x, double y) { return x * x + y * y; }, {5.0, 5.0}, {0.1, 0.1}, 1e-30, 5);
    EXPECT_FALSE(r.converged);
    EXPECT_LE(r.iterations, 5);
}

TEST(Optimizer, GoldenSection) {
    const auto r = golden_section([](double x) { return (x - 2.0) * (x - 2.0) + 1.0; }, 0.5, 4.0, 1e-9, 200);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.x, 2.0, 1e-7);
    EXPECT_NEAR(r.f, 1.0, 1e-14);
}
