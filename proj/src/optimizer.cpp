#include "dks/optimizer.hpp"

#include "dks/approximations.hpp"
#include "dks/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

namespace dks {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const KerrScenario& s) {
    return "(|alpha| = " + std::to_string(std::abs(s.alpha)) + ", kz = " + std::to_string(s.kz) + ")";
}

simd::FanoCoefficients coefficients(const FanoForm& form) {
    simd::FanoCoefficients c;
    c.scale = form.scale;
    c.g1_re = form.g1.real();
    c.g1_im = form.g1.imag();
    c.u_re = form.linear.real();
    c.u_im = form.linear.imag();
    c.w_re = form.quadratic.real();
    c.w_im = form.quadratic.imag();
    c.s = form.radial;
    return c;
}

struct Candidate {
    cplx beta;
    double f = kInf;
};

bool better(const Candidate& a, const Candidate& b, double tie) {
    if (std::abs(a.f - b.f) <= tie)
        return std::norm(a.beta) < std::norm(b.beta);
    return a.f < b.f;
}

Optimum make_optimum(const KerrScenario& scenario, const FanoForm& form, cplx beta) {
    const FanoReport r = fano_displaced(form, beta);
    Optimum o;
    o.beta_opt = beta;
    o.kz = scenario.kz;
    o.fano_min = r.fano;
    o.suppression_db = r.suppression_db;
    o.mean_photon = r.mean_photon;
    o.beta_magnitude = std::abs(beta);
    return o;
}

// Typical |beta| of the optimum: sqrt(F_min) near (Kz)_opt, growing like
// 1/Kz at shorter lengths.
double seed_magnitude(double alpha, double kz) {
    const double k0 = approx_constants::kz_opt_coefficient() * std::pow(alpha, -4.0 / 3.0);
    const double f0 = approx_constants::f_min_coefficient() * std::pow(alpha, -4.0 / 3.0);
    return std::sqrt(f0) * std::max(1.0, 0.4 * k0 / kz);
}

// Simplex with restarts from the best vertex until a restart stops paying off.
Candidate refine(const simd::FanoCoefficients& c, cplx start, double step, const OptimizerConfig& cfg,
                 const KerrScenario& scenario) {
    const auto f = [&c](double x, double y) {
        double out;
        simd::detail::fano_batch_scalar(c, &x, &y, &out, 1);
        return out;
    };
    std::array<double, 2> x{start.real(), start.imag()};
    double best = f(x[0], x[1]);
    double h = step;
    for (int restart = 0; restart < 8; ++restart) {
        const SimplexResult r = nelder_mead_2d(f, x, {h, h}, cfg.simplex_ftol, cfg.simplex_max_iterations);
        if (!r.converged)
            fail(ErrorCode::NonConvergence, "simplex exceeded " + std::to_string(cfg.simplex_max_iterations) +
                                                " iterations at " + describe(scenario));
        const double gain = best - r.f;
        if (r.f <= best) {
            x = r.x;
            best = r.f;
        }
        if (restart > 0 && !(gain > cfg.simplex_ftol))
            break;
        h *= 0.1;
    }
    return {{x[0], x[1]}, best};
}

} // namespace

SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f, std::array<double, 2> start,
                             std::array<double, 2> step, double ftol, int max_iterations) {
    std::array<std::array<double, 2>, 3> v{start, start, start};
    v[1][0] += step[0];
    v[2][1] += step[1];
    std::array<double, 3> fv{};
    for (int i = 0; i < 3; ++i)
        fv[i] = f(v[i][0], v[i][1]);

    SimplexResult res;
    for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int lo = idx[0], mid = idx[1], hi = idx[2];
        if (std::isfinite(fv[hi]) && fv[hi] - fv[lo] <= ftol) {
            res.converged = true;
            break;
        }
        const std::array<double, 2> cen{0.5 * (v[lo][0] + v[mid][0]), 0.5 * (v[lo][1] + v[mid][1])};
        const auto along = [&](double t) {
            return std::array<double, 2>{cen[0] + t * (v[hi][0] - cen[0]), cen[1] + t * (v[hi][1] - cen[1])};
        };
        const auto xr = along(-1.0);
        const double fr = f(xr[0], xr[1]);
        if (fr < fv[lo]) {
            const auto xe = along(-2.0);
            const double fe = f(xe[0], xe[1]);
            if (fe < fr) {
                v[hi] = xe;
                fv[hi] = fe;
            } else {
                v[hi] = xr;
                fv[hi] = fr;
            }
            continue;
        }
        if (fr < fv[mid]) {
            v[hi] = xr;
            fv[hi] = fr;
            continue;
        }
        const bool outside = fr < fv[hi];
        const auto xc = along(outside ? -0.5 : 0.5);
        const double fc = f(xc[0], xc[1]);
        if (fc < (outside ? fr : fv[hi])) {
            v[hi] = xc;
            fv[hi] = fc;
            continue;
        }
        for (int i : {mid, hi}) {
            v[i] = {0.5 * (v[i][0] + v[lo][0]), 0.5 * (v[i][1] + v[lo][1])};
            fv[i] = f(v[i][0], v[i][1]);
        }
    }
    const int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = v[best];
    res.f = fv[best];
    return res;
}

LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                           int max_iterations) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    LineMinimum out;
    for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
        if (b - a < rel_tol * std::abs(0.5 * (a + b))) {
            out.converged = true;
            break;
        }
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if (fc <= fd) {
        out.x = c;
        out.f = fc;
    } else {
        out.x = d;
        out.f = fd;
    }
    return out;
}

Optimum optimize_beta(const KerrScenario& scenario, const OptimizerConfig& cfg, std::optional<cplx> warm_start) {
    scenario.validate();
    const double alpha = std::abs(scenario.alpha);
    if (!(alpha > 0.0))
        fail(ErrorCode::InvalidArgument, "optimize_beta requires |alpha| > 0");
    if (cfg.grid_angles < 64 || cfg.grid_magnitudes < 32)
        fail(ErrorCode::InvalidArgument, "the polar grid needs at least 64 angles x 32 magnitudes");

    const FanoForm form = fano_form(scenario);
    if (scenario.kz == 0.0)
        return make_optimum(scenario, form, cplx{});

    const simd::FanoCoefficients coeffs = coefficients(form);
    const double seed = seed_magnitude(alpha, scenario.kz);
    const double theta0 = std::arg(form.g1) + 0.5 * std::numbers::pi;
    const int na = cfg.grid_angles, nm = cfg.grid_magnitudes;
    const double dr = 4.0 * seed / (nm - 1);

    // Magnitude index 0 (beta = 0) is stored once, then angle-major cells.
    const std::size_t cells = 1 + static_cast<std::size_t>(na) * (nm - 1);
    std::vector<double> re(cells), im(cells), fv(cells);
    re[0] = im[0] = 0.0;
    for (int a = 0; a < na; ++a) {
        const double th = theta0 + 2.0 * std::numbers::pi * a / na;
        const double ct = std::cos(th), st = std::sin(th);
        for (int m = 1; m < nm; ++m) {
            const std::size_t i = 1 + static_cast<std::size_t>(a) * (nm - 1) + (m - 1);
            re[i] = dr * m * ct;
            im[i] = dr * m * st;
        }
    }
    simd::fano_batch(coeffs, re, im, fv, cfg.backend);

    std::vector<std::size_t> order(cells);
    for (std::size_t i = 0; i < cells; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return better({{re[a], im[a]}, fv[a]}, {{re[b], im[b]}, fv[b]}, cfg.tie_tolerance);
    });

    Candidate best{{0.0, 0.0}, fv[0]};
    std::vector<int> used_angles;
    const auto angle_of = [&](std::size_t i) { return i == 0 ? -1 : static_cast<int>((i - 1) / (nm - 1)); };
    const auto far_enough = [&](int a) {
        for (int u : used_angles) {
            const int d = std::abs(a - u);
            if (std::min(d, na - d) < na / 16)
                return false;
        }
        return true;
    };
    int starts = 0;
    for (std::size_t i : order) {
        if (starts >= cfg.simplex_starts)
            break;
        const int a = angle_of(i);
        if (a >= 0 && !far_enough(a))
            continue;
        if (a >= 0)
            used_angles.push_back(a);
        ++starts;
        const Candidate c = refine(coeffs, {re[i], im[i]}, dr, cfg, scenario);
        if (better(c, best, cfg.tie_tolerance))
            best = c;
    }
    if (warm_start) {
        const Candidate c = refine(coeffs, *warm_start, dr, cfg, scenario);
        if (better(c, best, cfg.tie_tolerance))
            best = c;
    }
    return make_optimum(scenario, form, best.beta);
}

Optimum optimize_length(cplx alpha, const OptimizerConfig& cfg) {
    const double a = std::abs(alpha);
    if (!(a >= 2.0) || !std::isfinite(a))
        fail(ErrorCode::InvalidArgument, "optimize_length requires |alpha| >= 2 (got " + std::to_string(a) + ")");
    if (!(cfg.length_lower > 0.0 && cfg.length_upper > cfg.length_lower))
        fail(ErrorCode::InvalidArgument, "length bracket must satisfy 0 < lower < upper");
    const double k0 = kz_opt_approx(a);
    const double lo = cfg.length_lower * k0, hi = cfg.length_upper * k0;
    const auto objective = [&](double kz) { return optimize_beta({alpha, kz}, cfg).fano_min; };
    const LineMinimum m = golden_section(objective, lo, hi, cfg.length_rel_tol, cfg.length_max_iterations);
    if (!m.converged)
        fail(ErrorCode::NonConvergence, "golden-section search did not reach the kz tolerance for |alpha| = " +
                                            std::to_string(a));
    const double edge = 10.0 * cfg.length_rel_tol * m.x;
    if (m.x - lo < edge || hi - m.x < edge)
        fail(ErrorCode::NonConvergence, "length optimum sits on the search bracket edge for |alpha| = " +
                                            std::to_string(a));
    return optimize_beta({alpha, m.x}, cfg);
}

std::vector<Optimum> sweep_length(cplx alpha, const std::vector<double>& kz_values, const OptimizerConfig& cfg) {
    for (std::size_t i = 0; i < kz_values.size(); ++i) {
        if (!(kz_values[i] >= 0.0) || !std::isfinite(kz_values[i]))
            fail(ErrorCode::InvalidArgument, "kz values must be finite and non-negative");
        if (i > 0 && kz_values[i] < kz_values[i - 1])
            fail(ErrorCode::InvalidArgument, "kz values must be sorted ascending");
    }
    if (cfg.parallelism < 1)
        fail(ErrorCode::InvalidArgument, "parallelism must be >= 1");

    std::vector<Optimum> out(kz_values.size());
    if (cfg.parallelism == 1 || kz_values.size() < 2) {
        std::optional<cplx> warm;
        for (std::size_t i = 0; i < kz_values.size(); ++i) {
            out[i] = optimize_beta({alpha, kz_values[i]}, cfg, cfg.warm_start ? warm : std::nullopt);
            if (kz_values[i] > 0.0)
                warm = out[i].beta_opt;
        }
        return out;
    }

    std::vector<std::exception_ptr> errors(kz_values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < kz_values.size(); i = next++) {
            try {
                out[i] = optimize_beta({alpha, kz_values[i]}, cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.parallelism), kz_values.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

RayleighSolution rayleigh_solution(const KerrScenario& scenario, double tau) {
    const FanoForm form = fano_form(scenario, tau);
    RayleighSolution sol;
    if (scenario.kz == 0.0)
        return sol;
    if (!(form.radial > 1e-13))
        fail(ErrorCode::SingularDenominatorForm,
             "denominator form is numerically singular (1 - |g1|^2 = " + std::to_string(0.5 * form.radial) + ") at " +
                 describe(scenario));

    const double gr = form.g1.real(), gi = form.g1.imag();
    const double ur = form.linear.real(), ui = form.linear.imag();
    const double wr = form.quadratic.real(), wi = form.quadratic.imag();
    const double s = form.radial;

    Eigen::Matrix3d b;
    b << 1.0, gr, gi, gr, 1.0, 0.0, gi, 0.0, 1.0;
    Eigen::Matrix3d n;
    n << 0.0, ur, -ui, ur, 2.0 * wr + s, -2.0 * wi, -ui, -2.0 * wi, -2.0 * wr + s;
    const Eigen::Matrix3d a = b + form.scale * n;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix3d> es(a, b);
    if (es.info() != Eigen::Success)
        fail(ErrorCode::SingularDenominatorForm, "generalised eigenproblem failed at " + describe(scenario));
    sol.bound = es.eigenvalues()(0);
    const Eigen::Vector3d v = es.eigenvectors().col(0);
    sol.eigenvector = {v(0), v(1), v(2)};
    if (std::abs(v(0)) > 1e-12 * v.norm())
        sol.beta = cplx{v(1) / v(0), v(2) / v(0)};
    return sol;
}

double rayleigh_lower_bound(const KerrScenario& scenario, double tau) {
    return rayleigh_solution(scenario, tau).bound;
}

} // namespace dks
