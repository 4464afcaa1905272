// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only (exit 1 on failure)

#include "app/commands.hpp"
#include "app/reproduce.hpp"
#include "dks/analytic.hpp"
#include "dks/approximations.hpp"
#include "dks/fock.hpp"
#include "dks/optimizer.hpp"
#include "dks/waveguide.hpp"
#include "dks/wigner.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

using namespace dks;
using namespace dks::app;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void absorb(Outcome& out, const std::vector<Check>& checks, const std::function<bool(const Check&)>& select) {
    int total = 0;
    for (const auto& c : checks) {
        if (!c.asserted || !select(c))
            continue;
        ++total;
        out.require(c.pass, c.name + " = " + num(c.computed) + " outside " + c.tolerance + " of " + num(c.reference));
    }
    out.note(std::to_string(total) + " cells checked");
}

RunConfig reproduce_config(const std::string& target) {
    RunConfig cfg;
    cfg.command = "reproduce";
    cfg.target = target;
    return cfg;
}

Outcome c1() {
    Outcome o;
    const auto r = reproduce("table1", reproduce_config("table1"));
    absorb(o, r.checks, [](const Check& c) {
        return c.name.rfind("F_min ", 0) == 0 || c.name.rfind("Kz_opt", 0) == 0 || c.name.rfind("|beta|", 0) == 0 ||
               c.name.rfind("<n>", 0) == 0;
    });
    return o;
}

Outcome c2() {
    Outcome o;
    const Optimum opt = optimize_length({10.0, 0.0});
    const double var = opt.fano_min * opt.mean_photon;
    o.require(std::abs(var - reference::spotlight_variance) <= 0.05, "variance " + num(var) + " not 1.99 +/- 0.05");
    o.require(std::abs(opt.suppression_db - reference::spotlight_db) <= 0.1,
              "suppression " + num(opt.suppression_db) + " dB not -16.9 +/- 0.1");
    o.note("variance " + num(var, 4) + ", " + num(opt.suppression_db, 4) + " dB");
    return o;
}

Outcome c3() {
    Outcome o;
    for (double a : {30.0, 50.0, 100.0}) {
        const double db = optimize_beta({a, kz_app(a * a)}).suppression_db;
        o.require(db >= -12.6 && db <= -11.6, "alpha=" + num(a) + ": " + num(db) + " dB outside [-12.6, -11.6]");
        o.require(std::abs(db - reference::crossover_db) <= 0.3, "alpha=" + num(a) + ": " + num(db) + " dB not within 0.3 of -12.1");
        o.note("alpha=" + num(a) + " " + num(db, 4) + " dB");
    }
    return o;
}

Outcome c4() {
    Outcome o;
    const auto r = reproduce("fig4", reproduce_config("fig4"));
    absorb(o, r.checks, [](const Check& c) { return c.name.rfind("max |piecewise", 0) == 0; });
    for (const auto& c : r.checks)
        if (c.name.rfind("max |piecewise", 0) == 0)
            o.note("max deviation " + num(c.computed, 3) + " dB");
    return o;
}

Outcome c5() {
    Outcome o;
    const auto r = reproduce("fig5", reproduce_config("fig5"));
    absorb(o, r.checks, [](const Check& c) { return c.name.rfind("fitted exponent", 0) == 0; });
    for (const auto& c : r.checks)
        if (c.name.rfind("fitted exponent", 0) == 0)
            o.note(c.name + " " + num(c.computed, 5));
    return o;
}

Outcome c6() {
    Outcome o;
    const auto r = reproduce("table2", reproduce_config("table2"));
    absorb(o, r.checks, [](const Check&) { return true; });
    return o;
}

Outcome c7() {
    Outcome o;
    const auto r = reproduce("table3", reproduce_config("table3"));
    absorb(o, r.checks, [](const Check&) { return true; });
    for (const auto& c : r.checks)
        if (!c.asserted)
            o.note("reported: " + c.name + " = " + num(c.computed, 4) + " vs table " + num(c.reference, 3));
    return o;
}

Outcome c8() {
    Outcome o;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double a = 2.0 + 28.0 * u(rng);
        const cplx alpha = std::polar(a, 2.0 * std::numbers::pi * u(rng));
        const double kz = 3.0 * kz_app(a * a) * u(rng);
        const double scale = std::sqrt(f_min_approx(a));
        const cplx beta = std::polar(3.0 * scale * u(rng), 2.0 * std::numbers::pi * u(rng));
        DisplacementSetting ds;
        ds.beta = beta;
        const double analytic = fano_displaced({alpha, kz}, ds).fano;
        const double fock = photon_statistics(displaced_kerr_state(alpha, kz, beta, {})).fano;
        worst = std::max(worst, std::abs(analytic - fock));
    }
    o.require(worst <= 1e-6, "max |F_analytic - F_fock| = " + num(worst));
    o.note("50 cases, max |dF| " + num(worst, 3));
    return o;
}

Outcome c9() {
    Outcome o;
    const Optimum opt = optimize_length({10.0, 0.0});
    for (const bool shifted : {false, true}) {
        const FockState s = displaced_kerr_state({10.0, 0.0}, opt.kz, shifted ? opt.beta_opt : cplx{}, {});
        const WignerGrid g = wigner(s, GridSpec{});
        const double integral = grid_integral(g), peak = grid_max_abs(g);
        const std::string tag = shifted ? "post-shift" : "pre-shift";
        o.require(std::abs(integral - 1.0) <= 1e-3, tag + " integral " + num(integral, 8));
        o.require(peak <= 2.0 / std::numbers::pi + 1e-9, tag + " max |W| " + num(peak, 10));
        o.note(tag + " integral " + num(integral, 8));
    }
    return o;
}

Outcome c10() {
    Outcome o;
    int probed = 0;
    for (double a : {3.0, 10.0, 30.0, 50.0, 100.0})
        for (double f : {0.05, 0.2, 0.5, 1.0, 1.5, 2.0, 3.0}) {
            const KerrScenario sc{{a, 0.0}, f * kz_opt_approx(a)};
            const double bound = rayleigh_lower_bound(sc);
            const double direct = optimize_beta(sc).fano_min;
            ++probed;
            o.require(bound <= direct + 1e-9, "bound " + num(bound) + " above direct " + num(direct) + " at alpha=" + num(a));
        }
    for (double a : {10.0, 50.0}) {
        const Optimum opt = optimize_length({a, 0.0});
        const double bound = rayleigh_lower_bound({{a, 0.0}, opt.kz});
        o.require(std::abs(bound / opt.fano_min - 1.0) <= 0.05, "alpha=" + num(a) + " bound not within 5%");
        o.note("alpha=" + num(a) + " bound/direct " + num(bound / opt.fano_min, 12));
    }
    o.note(std::to_string(probed) + " scenarios probed");
    return o;
}

Outcome c11() {
    Outcome o;
    // norm preservation and Kerr diagonality
    const FockState coh = coherent_state({3.0, 1.0});
    const FockState kerr = kerr_evolve(coh, 0.37);
    const FockState disp = displace(kerr, {0.4, -0.7});
    for (const auto* s : {&coh, &kerr, &disp})
        o.require(std::abs(s->norm_squared() - 1.0) <= 1e-12, "norm drift " + num(s->norm_squared() - 1.0));
    o.require(photon_distribution(coh) == photon_distribution(kerr), "Kerr evolution changed |c_n|^2");

    // 2|alpha|^2 K = gamma P
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        WaveguideSpec wg{1e-20 * (1.0 + 99.0 * u(rng)), 1.5, 1e-13 * (1.0 + 99.0 * u(rng)), 0.4e-6 + 2e-6 * u(rng)};
        BeamSpec beam{1e-4 + u(rng), 1e5 + 1e9 * u(rng)};
        const double a = alpha_from_power(beam, wg);
        const double lhs = 2.0 * a * a * kerr_coupling(wg, beam), rhs = gamma(wg) * beam.power;
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
    }
    o.require(worst <= 1e-12, "2|a|^2 K vs gamma P relative error " + num(worst));

    // f2 minimiser constants
    for (double a : {2.0, 10.0, 50.0, 1e3}) {
        const double a2 = a * a, k = kz_opt_approx(a);
        const double slope = (32.0 / 3.0) * a2 * a2 * k * k * k - 1.0 / (8.0 * a2 * a2 * k * k * k);
        const double scale_term = (32.0 / 3.0) * a2 * a2 * k * k * k;
        o.require(std::abs(slope) <= 1e-12 * scale_term, "f2'(kz_opt) != 0 at alpha=" + num(a));
        o.require(std::abs(f2_near_opt(a2, k) / f_min_approx(a) - 1.0) <= 1e-12, "f2(kz_opt) != f_min at alpha=" + num(a));
    }
    o.require(std::abs(approx_constants::kz_opt_coefficient() - 0.477) < 5e-4, "kz_opt coefficient");
    o.require(std::abs(approx_constants::f_min_coefficient() - 0.413) < 5e-4, "f_min coefficient");

    // artifact determinism
    RunConfig cfg;
    cfg.command = "optimize";
    cfg.alpha = 10.0;
    for (Format f : {Format::Csv, Format::Json}) {
        cfg.format = f;
        o.require(render(run_command(cfg).artifact, f) == render(run_command(cfg).artifact, f),
                  std::string("non-deterministic ") + to_string(f) + " artifact");
    }
    o.note("norms, Kerr diagonality, gamma identity (max " + num(worst, 2) + "), f2 constants, determinism");
    return o;
}

struct Criterion {
    const char* title;
    double budget_s;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"Table 1 reproduction", 60, c1},
    {"alpha=10 spotlight variance and dB", 0, c2},
    {"crossover F at (Kz)_app", 0, c3},
    {"piecewise approximation within 1 dB (alpha=50)", 120, c4},
    {"scaling exponents -4/3", 0, c5},
    {"Table 2 reproduction", 1, c6},
    {"Table 3 reproduction", 0, c7},
    {"analytic vs Fock oracle, 50 random cases", 300, c8},
    {"Wigner normalisation and bound", 300, c9},
    {"Rayleigh lower bound cross-check", 0, c10},
    {"invariant suite", 0, c11},
};

bool run_one(int n) {
    const Criterion& c = kCriteria[n - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0)
        o.require(secs < c.budget_s, "runtime " + num(secs, 3) + " s over budget " + num(c.budget_s) + " s");
    std::printf("C%-2d %s  %s: %s [%.2f s]\n", n, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
    return o.pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int criterion = 0;
    app.add_option("--criterion", criterion, "Run one criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    if (criterion > 0)
        return run_one(criterion) ? 0 : 1;
    for (int n = 1; n <= 11; ++n)
        all = run_one(n) && all;
    return all ? 0 : 1;
}
