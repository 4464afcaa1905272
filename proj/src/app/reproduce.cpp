#include "app/reproduce.hpp"

#include "app/commands.hpp"
#include "dks/approximations.hpp"
#include "dks/error.hpp"
#include "dks/optimizer.hpp"
#include "dks/waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dks::app {

namespace {

std::string pct(double rel) { return "+/-" + format_number(rel * 100.0) + "%"; }

Check finish(Check c) {
    c.pass = c.lower <= c.computed && c.computed <= c.upper;
    return c;
}

double to_db(double f) { return 10.0 * std::log10(f); }

// Appends a check as a table row: quantity, key, computed, reference, delta, tolerance, asserted, pass.
struct CheckTable {
    Reproduction& rep;
    void add(const std::string& quantity, const Cell& key, Check c, bool relative_delta) {
        const double delta = relative_delta ? c.computed / c.reference - 1.0 : c.computed - c.reference;
        rep.artifact.table.rows.push_back(
            {quantity, key, c.computed, c.reference, delta, c.tolerance, c.asserted, c.pass});
        rep.checks.push_back(std::move(c));
    }
};

const std::vector<std::string> kCheckColumns = {"quantity", "key",       "computed", "reference",
                                                "delta",    "tolerance", "asserted", "pass"};

void table1(Reproduction& rep, const RunConfig& cfg) {
    const OptimizerConfig oc = optimizer_config(cfg);
    rep.artifact.table.columns = kCheckColumns;
    CheckTable t{rep};
    for (int i = 0; i < 4; ++i) {
        const double a = reference::table1_alpha[i];
        const Optimum o = optimize_length({a, 0.0}, oc);
        const Cell key = a;
        const std::string tag = "alpha=" + format_number(a);
        t.add("F_min", key, relative_check("F_min " + tag, o.fano_min, reference::table1_fano[i], 0.02), true);
        t.add("F_min_db", key, absolute_check("F_min_db " + tag, o.suppression_db, reference::table1_db[i], 0.05), false);
        t.add("Kz_opt", key, relative_check("Kz_opt " + tag, o.kz, reference::table1_kz[i], 0.02), true);
        t.add("beta_abs", key, relative_check("|beta| " + tag, o.beta_magnitude, reference::table1_beta[i], 0.05), true);
        t.add("mean_photon", key, relative_check("<n> " + tag, o.mean_photon, reference::table1_mean[i], 0.005), true);
        if (i == 0)
            t.add("variance", key,
                  absolute_check("variance " + tag, o.fano_min * o.mean_photon, reference::spotlight_variance, 0.05),
                  false);
    }
}

struct Table2Cell {
    double power, width, alpha, alpha_unit, db, z_km, z_unit;
};

void table2(Reproduction& rep) {
    static constexpr Table2Cell cells[] = {
        {1e-3, 1e6, 88e3, 1e3, -70, 560, 10},   {1e-2, 1e6, 280e3, 10e3, -76, 120, 10},
        {1e-1, 1e6, 880e3, 10e3, -83, 26, 1},   {1e-3, 1e7, 28e3, 1e3, -63, 260, 10},
        {1e-2, 1e7, 88e3, 1e3, -70, 56, 1},     {1e-1, 1e7, 280e3, 10e3, -76, 12, 1},
        {1e-3, 1e8, 8.8e3, 0.1e3, -56, 121, 1}, {1e-2, 1e8, 28e3, 1e3, -63, 26, 1},
        {1e-1, 1e8, 88e3, 1e3, -70, 5.6, 0.1},
    };
    const WaveguideSpec wg = si3n4_preset();
    rep.artifact.table.columns = {"power_W",     "spectral_width_Hz", "alpha",        "alpha_ref",
                                  "F_min_db",    "F_min_db_ref",    "z_opt_km",     "z_opt_km_ref",
                                  "z_opt_km_engineering", "pass"};
    for (const auto& c : cells) {
        const BeamSpec beam{c.power, c.width};
        const double alpha = alpha_from_power(beam, wg);
        const double db = fano_floor_physical(wg, beam);
        const double z = z_opt_physical(wg, beam) / 1e3;
        const double z_eng = z_opt_engineering(wg, beam) / 1e3;
        const std::string tag = "P=" + format_number(c.power) + " df=" + format_number(c.width);
        const Check ca = absolute_check("alpha " + tag, alpha, c.alpha, 0.5 * c.alpha_unit);
        const Check cd = absolute_check("F_min_db " + tag, db, c.db, 0.5);
        const Check cz = absolute_check("z_opt_km " + tag, z, c.z_km, 0.5 * c.z_unit);
        const Check ce = relative_check("z_opt routes agree " + tag, z_eng, z, 1e-12);
        rep.artifact.table.rows.push_back(
            {c.power, c.width, alpha, c.alpha, db, c.db, z, c.z_km, z_eng, ca.pass && cd.pass && cz.pass && ce.pass});
        for (const Check& ch : {ca, cd, cz, ce})
            rep.checks.push_back(ch);
    }
    rep.artifact.meta["precision_rule"] = "printed value +/- half a unit of its last printed digit";
}

void table3(Reproduction& rep) {
    static constexpr double targets[] = {-5.0, -10.0, -15.0};
    static constexpr double x_table[] = {0.31, 0.70, 1.80};
    static constexpr double z10_ref[] = {18, 41, 82};
    static constexpr double z100_ref[] = {1.8, 4.1, 8.2};
    const WaveguideSpec wg = si3n4_preset();
    rep.artifact.table.columns = {"target_db",    "x_table",         "x_inverted",       "x_rel_delta",
                                  "z_10mW",       "z_10mW_ref",    "z_100mW",          "z_100mW_ref",
                                  "z_10mW_from_inverted_x", "z_100mW_from_inverted_x", "f1_db_at_x_table",
                                  "pass"};
    for (int i = 0; i < 3; ++i) {
        const double xt = x_table[i];
        const double xi = suppression_x(targets[i]);
        const double z10 = length_from_x(xt, 1e-2, wg), z100 = length_from_x(xt, 1e-1, wg);
        const std::string tag = format_number(targets[i]) + " dB";
        const Check c10 = relative_check("z@10mW " + tag, z10, z10_ref[i], 0.03);
        const Check c100 = relative_check("z@100mW " + tag, z100, z100_ref[i], 0.03);
        // the -15 dB inversion is reported only
        const Check cx = relative_check("x inverted " + tag, xi, xt, 0.03, i < 2);
        rep.artifact.table.rows.push_back({targets[i], xt, xi, xi / xt - 1.0, z10, z10_ref[i], z100, z100_ref[i],
                                           length_from_x(xi, 1e-2, wg), length_from_x(xi, 1e-1, wg),
                                           to_db(std::exp(-4.0 * xt + xt * xt)),
                                           c10.pass && c100.pass && (cx.pass || !cx.asserted)});
        for (const Check& ch : {c10, c100, cx})
            rep.checks.push_back(ch);
    }
    rep.artifact.meta["gamma_per_W_m"] = gamma(wg);
    rep.artifact.meta["note"] =
        "z is computed from the table's x; x_inverted solves the regime formula for the target. "
        "At -15 dB they disagree (x 1.80 vs 1.41).";
}

void fig3(Reproduction& rep, const RunConfig& cfg) {
    const OptimizerConfig oc = optimizer_config(cfg);
    rep.artifact.table.columns = {"alpha", "kz", "fano", "suppression_db", "beta_abs"};
    const int points = 121;
    for (int i = 0; i < 2; ++i) {
        const double a = i == 0 ? 50.0 : 100.0;
        const double ref = i == 0 ? reference::table1_kz[2] : reference::table1_kz[3];
        const double k0 = kz_opt_approx(a);
        std::vector<double> kzs(points);
        for (int j = 0; j < points; ++j)
            kzs[static_cast<std::size_t>(j)] = 2.5 * k0 * j / (points - 1);
        const auto optima = sweep_length({a, 0.0}, kzs, oc);
        std::size_t best = 0;
        for (std::size_t j = 0; j < optima.size(); ++j) {
            rep.artifact.table.rows.push_back(
                {a, optima[j].kz, optima[j].fano_min, optima[j].suppression_db, optima[j].beta_magnitude});
            if (optima[j].fano_min < optima[best].fano_min)
                best = j;
        }
        const double step = kzs[1] - kzs[0];
        rep.checks.push_back(absolute_check("curve minimum kz alpha=" + format_number(a), optima[best].kz, ref, step));
    }
}

void fig4(Reproduction& rep, const RunConfig& cfg) {
    const OptimizerConfig oc = optimizer_config(cfg);
    const double a = 50.0, a2 = a * a;
    const Optimum opt = optimize_length({a, 0.0}, oc);
    const int points = 96;
    std::vector<double> kzs(points);
    for (int j = 0; j < points; ++j)
        kzs[static_cast<std::size_t>(j)] = opt.kz * (0.05 + 1.95 * j / (points - 1));
    const auto optima = sweep_length({a, 0.0}, kzs, oc);

    rep.artifact.table.columns = {"kz", "fano_numeric", "numeric_db", "f1", "f1_db", "f2", "f2_db", "piecewise_db",
                                  "regime", "deviation_db"};
    double worst = 0.0;
    for (std::size_t j = 0; j < optima.size(); ++j) {
        const double kz = kzs[j];
        const double f1 = f1_short(a2, kz), f2 = f2_near_opt(a2, kz);
        const PiecewiseValue pw = f_piecewise(a, kz);
        const double dev = to_db(pw.fano) - optima[j].suppression_db;
        worst = std::max(worst, std::abs(dev));
        rep.artifact.table.rows.push_back({kz, optima[j].fano_min, optima[j].suppression_db, f1, to_db(f1), f2,
                                           to_db(f2), to_db(pw.fano), std::string(to_string(pw.curve.regime)), dev});
    }
    rep.checks.push_back(range_check("max |piecewise - numeric| dB over [0.05, 2] (Kz)_opt", worst, 0.0, 1.0));

    const double kapp = kz_app(a2);
    const double at_app = optimize_beta({a, kapp}, oc).suppression_db;
    rep.checks.push_back(range_check("numeric F at (Kz)_app in [-12.6, -11.6] dB", at_app, -12.6, -11.6));
    rep.checks.push_back(absolute_check("numeric F at (Kz)_app near -12.1 dB", at_app, reference::crossover_db, 0.3));
    rep.checks.push_back(absolute_check("f1 at (Kz)_app", to_db(f1_short(a2, kapp)), reference::crossover_f1_db, 0.05));
    rep.checks.push_back(absolute_check("f2 at (Kz)_app", to_db(f2_near_opt(a2, kapp)), reference::crossover_f2_db, 0.05));
    const double seam = std::abs(to_db(f1_short(a2, kapp)) - to_db(f2_near_opt(a2, kapp)));
    rep.checks.push_back(range_check("seam jump at (Kz)_app dB", seam, 0.0, 1.1));
    rep.artifact.meta["alpha"] = a;
    rep.artifact.meta["kz_opt_numeric"] = opt.kz;
    rep.artifact.meta["kz_app"] = kapp;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

void fig5(Reproduction& rep, const RunConfig& cfg) {
    const OptimizerConfig oc = optimizer_config(cfg);
    rep.artifact.table.columns = {"alpha",   "kz_opt",          "kz_opt_approx", "kz_opt_scaled",
                                  "fano_min", "fano_min_approx", "fano_min_scaled", "kz_over_fano"};
    std::vector<double> la, lk, lf;
    for (double a : reference::fig5_alpha) {
        const Optimum o = optimize_length({a, 0.0}, oc);
        const double s = std::pow(a, 4.0 / 3.0);
        rep.artifact.table.rows.push_back(
            {a, o.kz, kz_opt_approx(a), o.kz * s, o.fano_min, f_min_approx(a), o.fano_min * s, o.kz / o.fano_min});
        la.push_back(std::log(a));
        lk.push_back(std::log(o.kz));
        lf.push_back(std::log(o.fano_min));
        const std::string tag = "alpha=" + format_number(a);
        rep.checks.push_back(range_check("kz_opt*alpha^(4/3) " + tag, o.kz * s, 0.43, 0.53));
        rep.checks.push_back(range_check("F_min*alpha^(4/3) " + tag, o.fano_min * s, 0.37, 0.46));
    }
    const double sk = slope(la, lk), sf = slope(la, lf);
    rep.checks.push_back(absolute_check("fitted exponent of (Kz)_opt", sk, -4.0 / 3.0, 0.05));
    rep.checks.push_back(absolute_check("fitted exponent of F_min", sf, -4.0 / 3.0, 0.05));
    const double ratio = approx_constants::kz_opt_coefficient() / approx_constants::f_min_coefficient();
    rep.artifact.meta["fitted_exponent_kz_opt"] = sk;
    rep.artifact.meta["fitted_exponent_fano_min"] = sf;
    rep.artifact.meta["approx_ratio_kz_over_fano"] = ratio;
    rep.artifact.meta["textual_ratio_sqrt3_over_2"] = std::sqrt(3.0) / 2.0;
    rep.artifact.meta["textual_ratio_consistent"] = std::abs(ratio - std::sqrt(3.0) / 2.0) < 1e-3;
}

Json checks_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks)
        arr.push_back(Json{{"name", c.name},
                           {"computed", c.computed},
                           {"reference", c.reference},
                           {"lower", c.lower},
                           {"upper", c.upper},
                           {"tolerance", c.tolerance},
                           {"asserted", c.asserted},
                           {"pass", c.pass}});
    return arr;
}

} // namespace

Check relative_check(std::string name, double computed, double reference, double rel_tol, bool asserted) {
    const double a = reference * (1.0 - rel_tol), b = reference * (1.0 + rel_tol);
    return finish({std::move(name), computed, reference, std::min(a, b), std::max(a, b), pct(rel_tol), asserted});
}

Check absolute_check(std::string name, double computed, double reference, double abs_tol, bool asserted) {
    return finish({std::move(name), computed, reference, reference - abs_tol, reference + abs_tol,
                   "+/-" + format_number(abs_tol), asserted});
}

Check range_check(std::string name, double computed, double lower, double upper, bool asserted) {
    return finish({std::move(name), computed, 0.5 * (lower + upper), lower, upper,
                   "[" + format_number(lower) + ", " + format_number(upper) + "]", asserted});
}

bool Reproduction::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || !c.asserted; });
}

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> t = {"table1", "table2", "table3", "fig3", "fig4", "fig5"};
    return t;
}

Reproduction reproduce(const std::string& target, const RunConfig& cfg) {
    Reproduction rep;
    rep.artifact.meta = base_meta(cfg);
    rep.artifact.meta["target"] = target;
    if (target == "table1")
        table1(rep, cfg);
    else if (target == "table2")
        table2(rep);
    else if (target == "table3")
        table3(rep);
    else if (target == "fig3")
        fig3(rep, cfg);
    else if (target == "fig4")
        fig4(rep, cfg);
    else if (target == "fig5")
        fig5(rep, cfg);
    else
        fail(ErrorCode::InvalidArgument, "field 'target' must be one of table1, table2, table3, fig3, fig4, fig5");
    rep.artifact.meta["checks"] = checks_json(rep.checks);
    rep.artifact.meta["all_pass"] = rep.passed();
    return rep;
}

} // namespace dks::app
