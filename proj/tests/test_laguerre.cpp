#include "dks/laguerre.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace dks;
using namespace dks::testing;

namespace {

struct Series {
    long double sum = 0.0L;
    long double abs_sum = 0.0L;  // sets the cancellation error of the oracle itself
};

// Explicit series sum_i (-1)^i C(n+m, n-i) x^i / i!, in long double, terms by ratio.
Series laguerre_series(int n, int m, long double x) {
    long double term = 1.0L;
    for (int j = 1; j <= n; ++j)
        term = term * (m + j) / j;  // C(n+m, n)
    Series s{term, term};
    for (int i = 1; i <= n; ++i) {
        term = -term * x * (n - i + 1) / (static_cast<long double>(m + i) * i);
        s.sum += term;
        s.abs_sum += std::abs(term);
    }
    return s;
}

} // namespace

TEST(Laguerre, DegreeZeroIsOne) {
    for (int m : {0, 1, 5, 40})
        for (double x : {0.0, 0.3, 7.0, 1500.0})
            EXPECT_EQ(laguerre_assoc(0, m, x).value(), 1.0);
}

TEST(Laguerre, DegreeOneOrdinary) {
    for (double x : {0.0, 0.25, 1.0, 3.5, 20.0})
        EXPECT_NEAR(laguerre_assoc(1, 0, x).value(), 1.0 - x, 1e-15 * (1.0 + x));
}

TEST(Laguerre, MatchesExplicitSeries) {
    const double l = laguerre_assoc(5, 2, 3.7).value();
    EXPECT_NEAR(l, static_cast<double>(laguerre_series(5, 2, 3.7L).sum), 1e-10);

    for (int trial = 0; trial < 50; ++trial) {
        const int n = uniform_int(0, 30);
        const int m = uniform_int(0, 12);
        const double x = uniform(0.0, 25.0);
        const Series ref = laguerre_series(n, m, x);
        const double got = laguerre_assoc(n, m, x).value();
        const double tol = 1e-12 * std::abs(static_cast<double>(ref.sum)) + 1e-15 * static_cast<double>(ref.abs_sum);
        EXPECT_NEAR(got, static_cast<double>(ref.sum), tol) << "n=" << n << " m=" << m << " x=" << x;
    }
}

TEST(Laguerre, ScaledValuesStayFiniteFarOutside) {
    const ScaledReal v = laguerre_assoc(300, 5, 2000.0);
    EXPECT_TRUE(std::isfinite(v.mantissa));
    EXPECT_TRUE(std::isfinite(v.exponent));
    EXPECT_GT(v.log_abs(), 700.0);  // beyond the double range
}

TEST(Laguerre, ContiguousRelationHoldsInScaledForm) {
    // L_n^m = L_n^{m+1} - L_{n-1}^{m+1}, checked in the log domain for huge values.
    for (int trial = 0; trial < 20; ++trial) {
        const int n = uniform_int(50, 300);
        const int m = uniform_int(0, 20);
        const double x = uniform(500.0, 3000.0);
        const ScaledReal a = laguerre_assoc(n, m, x);
        const ScaledReal b = laguerre_assoc(n, m + 1, x);
        const ScaledReal c = laguerre_assoc(n - 1, m + 1, x);
        const double ref = std::max({a.exponent, b.exponent, c.exponent});
        const double lhs = a.mantissa * std::exp(a.exponent - ref);
        const double rhs = b.mantissa * std::exp(b.exponent - ref) - c.mantissa * std::exp(c.exponent - ref);
        const double scale = std::max(std::abs(b.mantissa * std::exp(b.exponent - ref)), std::abs(lhs));
        EXPECT_NEAR(lhs, rhs, 1e-9 * scale) << "n=" << n << " m=" << m << " x=" << x;
    }
}

TEST(Laguerre, FunctionSequenceStartsAtPoissonAmplitude) {
    for (double x : {0.01, 1.0, 9.0, 400.0, 4000.0}) {
        for (int k : {0, 1, 7, 60}) {
            const auto f = laguerre_function_sequence(k, x, 1);
            const double ref = std::exp(-0.5 * x + 0.5 * k * std::log(x) - 0.5 * std::lgamma(k + 1.0));
            EXPECT_NEAR(f[0], ref, 1e-12 * std::max(ref, 1e-300)) << "k=" << k << " x=" << x;
        }
    }
}

TEST(Laguerre, FunctionSequenceIsBounded) {
    for (int trial = 0; trial < 30; ++trial) {
        const int k = uniform_int(0, 80);
        const double x = uniform(0.0, 2500.0);
        for (double v : laguerre_function_sequence(k, x, 300)) {
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_LE(std::abs(v), 1.0 + 1e-12);
        }
    }
}

TEST(Laguerre, FunctionSequenceRowIsUnitary) {
    // sum_k |<j+k|D|j>|^2 over k = -j..inf equals 1; for j = 0 only k >= 0 contributes.
    const double x = 6.25;
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double v = laguerre_function_sequence(k, x, 1)[0];
        sum += v * v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-13);
}
