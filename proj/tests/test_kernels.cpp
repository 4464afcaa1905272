#include "dks/analytic.hpp"
#include "dks/fock.hpp"
#include "dks/simd/kernels.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace dks;
using namespace dks::simd;
using namespace dks::testing;

namespace {

FanoCoefficients coefficients(const FanoForm& f) {
    FanoCoefficients c;
    c.scale = f.scale;
    c.g1_re = f.g1.real();
    c.g1_im = f.g1.imag();
    c.u_re = f.linear.real();
    c.u_im = f.linear.imag();
    c.w_re = f.quadratic.real();
    c.w_im = f.quadratic.imag();
    c.s = f.radial;
    return c;
}

WignerTables tables(const FockState& s) {
    std::vector<double> re, im;
    for (const cplx& c : s.amplitudes()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return make_wigner_tables(re, im);
}

#define REQUIRE_AVX2()                                        \
    if (!available(Backend::Avx2))                            \
    GTEST_SKIP() << "AVX2 kernels not available on this host"

} // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
    EXPECT_TRUE(available(Backend::Scalar));
    EXPECT_EQ(to_string(Backend::Scalar), "scalar");
    EXPECT_EQ(to_string(Backend::Avx2), "avx2");
    EXPECT_TRUE(available(active_backend()));
}

TEST(Kernels, ScalarFanoMatchesComplexEvaluation) {
    for (int trial = 0; trial < 20; ++trial) {
        const double mag = uniform(1.0, 100.0);
        const KerrScenario sc{mag, uniform(0.0, 2.0) / (mag * mag)};
        const FanoForm form = fano_form(sc, uniform(0.3, 1.0));
        std::vector<double> re(37), im(37), out(37);
        for (std::size_t i = 0; i < re.size(); ++i) {
            const cplx b = random_complex(0.8);
            re[i] = b.real();
            im[i] = b.imag();
        }
        fano_batch(coefficients(form), re, im, out, Backend::Scalar);
        for (std::size_t i = 0; i < re.size(); ++i)
            EXPECT_NEAR(out[i], fano_displaced(form, {re[i], im[i]}).fano, 1e-12 * std::max(1.0, out[i]));
    }
}

TEST(Kernels, FanoBatchSignalsVanishingDenominator) {
    const FanoForm form = fano_form({5.0, 0.0});
    std::vector<double> re{-1.0, 0.1}, im{0.0, 0.0}, out(2);
    fano_batch(coefficients(form), re, im, out, Backend::Scalar);
    EXPECT_TRUE(std::isinf(out[0]));
    EXPECT_TRUE(std::isfinite(out[1]));
}

TEST(Kernels, FanoBatchSizeMismatch) {
    std::vector<double> re(4), im(3), out(4);
    EXPECT_DKS_ERROR(fano_batch({}, re, im, out, Backend::Scalar), ErrorCode::InvalidArgument);
}

TEST(Kernels, Avx2FanoMatchesScalar) {
    REQUIRE_AVX2();
    for (int trial = 0; trial < 40; ++trial) {
        const double mag = uniform(1.0, 200.0);
        const KerrScenario sc{std::polar(mag, uniform(-M_PI, M_PI)), uniform(0.0, 3.0) / (mag * mag)};
        const FanoCoefficients c = coefficients(fano_form(sc, uniform(0.2, 1.0)));
        const std::size_t n = static_cast<std::size_t>(uniform_int(0, 67));
        std::vector<double> re(n), im(n), a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx beta = random_complex(1.5);
            re[i] = beta.real();
            im[i] = beta.imag();
        }
        if (n > 0) {
            re[0] = -c.g1_re;  // D = 1 - |g1|^2, possibly exactly zero
            im[0] = -c.g1_im;
        }
        fano_batch(c, re, im, a, Backend::Scalar);
        fano_batch(c, re, im, b, Backend::Avx2);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isinf(a[i]))
                EXPECT_TRUE(std::isinf(b[i]));
            else
                EXPECT_EQ(a[i], b[i]) << "i=" << i << " n=" << n;
        }
    }
}

TEST(Kernels, ScalarWignerMatchesVacuumClosedForm) {
    const WignerTables t = tables(FockState::vacuum());
    std::vector<double> re{0.0, 0.5, -1.2}, im{0.0, 0.5, 2.0}, out(3);
    wigner_points(t, re, im, out, Backend::Scalar);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(out[i], 2.0 / M_PI * std::exp(-2.0 * (re[i] * re[i] + im[i] * im[i])), 1e-15);
}

TEST(Kernels, Avx2WignerMatchesScalar) {
    REQUIRE_AVX2();
    std::vector<FockState> states{FockState::vacuum(), random_state(7), random_state(40),
                                  kerr_evolve(coherent_state(cplx(3.0, 1.0)), 0.07),
                                  displace(kerr_evolve(coherent_state(10.0), 0.0218), cplx(0.3, 1.1))};
    for (const FockState& s : states) {
        const WignerTables t = tables(s);
        const cplx centre = s.n_trunc() > 2 ? field_moment(s, 0, 1) : cplx(0.0, 0.0);
        for (std::size_t n : {1u, 3u, 4u, 5u, 31u, 64u}) {
            std::vector<double> re(n), im(n), a(n), b(n);
            for (std::size_t i = 0; i < n; ++i) {
                const cplx p = centre + random_complex(6.0);
                re[i] = p.real();
                im[i] = p.imag();
            }
            re[0] = 0.0;
            im[0] = 0.0;
            wigner_points(t, re, im, a, Backend::Scalar);
            wigner_points(t, re, im, b, Backend::Avx2);
            for (std::size_t i = 0; i < n; ++i)
                EXPECT_NEAR(a[i], b[i], 1e-12) << "dim=" << s.dimension() << " i=" << i;
        }
    }
}

TEST(Kernels, UnavailableBackendFallsBack) {
    if (available(Backend::Avx2))
        GTEST_SKIP() << "AVX2 present";
    const FanoCoefficients c = coefficients(fano_form({5.0, 0.01}));
    std::vector<double> re{0.1}, im{0.1}, a(1), b(1);
    fano_batch(c, re, im, a, Backend::Scalar);
    fano_batch(c, re, im, b, Backend::Avx2);
    EXPECT_EQ(a[0], b[0]);
}
