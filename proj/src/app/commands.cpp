#include "app/commands.hpp"

#include "app/reproduce.hpp"
#include "dks/analytic.hpp"
#include "dks/approximations.hpp"
#include "dks/wigner.hpp"

#include <cmath>
#include <numbers>

namespace dks::app {

namespace {

double require(const std::optional<double>& v, const char* field) {
    if (!v)
        fail(ErrorCode::InvalidArgument, std::string("missing required field '") + field + "'");
    return *v;
}

cplx alpha_of(const RunConfig& cfg) { return {require(cfg.alpha, "alpha"), cfg.alpha_im.value_or(0.0)}; }

cplx beta_of(const RunConfig& cfg) { return {cfg.beta_re.value_or(0.0), cfg.beta_im.value_or(0.0)}; }

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json optimizer_meta(const OptimizerConfig& o) {
    return Json{{"grid_angles", o.grid_angles},
                {"grid_magnitudes", o.grid_magnitudes},
                {"simplex_ftol", o.simplex_ftol},
                {"simplex_max_iterations", o.simplex_max_iterations},
                {"tie_tolerance", o.tie_tolerance},
                {"length_bracket", Json::array({o.length_lower, o.length_upper})},
                {"length_rel_tol", o.length_rel_tol}};
}

// beta either given, or the optimum at (alpha, kz).
cplx resolve_beta(const RunConfig& cfg, cplx alpha, double kz) {
    if (cfg.optimal_beta) {
        if (cfg.beta_re || cfg.beta_im)
            fail(ErrorCode::InvalidArgument, "field 'optimal_beta' conflicts with 'beta_re'/'beta_im'");
        return optimize_beta({alpha, kz}, optimizer_config(cfg)).beta_opt;
    }
    return beta_of(cfg);
}

CommandResult cmd_fano(const RunConfig& cfg) {
    const KerrScenario sc{alpha_of(cfg), require(cfg.kz, "kz")};
    DisplacementSetting ds;
    ds.tau = cfg.tau.value_or(1.0);
    ds.beta = beta_of(cfg);
    const FanoReport r = fano_displaced(sc, ds);

    CommandResult res;
    res.artifact.meta = base_meta(cfg);
    res.artifact.table.columns = {"alpha_re", "alpha_im", "kz",       "beta_re", "beta_im",       "tau",
                                  "mean_photon", "variance", "fano", "mandel_q", "suppression_db"};
    res.artifact.table.rows.push_back({sc.alpha.real(), sc.alpha.imag(), sc.kz, ds.beta.real(), ds.beta.imag(), ds.tau,
                                       r.mean_photon, r.variance, r.fano, r.mandel_q, r.suppression_db});
    res.summary = to_text(res.artifact.table);
    return res;
}

std::vector<Cell> optimum_row(const Optimum& o, cplx alpha) {
    const KerrScenario sc{alpha, o.kz};
    DisplacementSetting ds;
    ds.beta = o.beta_opt;
    const cplx shift = ds.shift_amplitude(sc);
    double bound = 1.0;
    if (o.kz > 0.0) {
        try {
            bound = rayleigh_lower_bound(sc);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularDenominatorForm)
                throw;
            bound = std::nan("");
        }
    }
    return {o.kz,           o.beta_opt.real(), o.beta_opt.imag(), o.beta_magnitude, o.fano_min, o.suppression_db,
            o.mean_photon,  o.fano_min * o.mean_photon, bound, shift.real(), shift.imag()};
}

const std::vector<std::string> kOptimumColumns = {"kz",          "beta_re",  "beta_im",        "beta_abs",
                                                  "fano_min",    "suppression_db", "mean_photon", "variance",
                                                  "rayleigh_bound", "shift_re", "shift_im"};

CommandResult cmd_optimize(const RunConfig& cfg) {
    const cplx alpha = alpha_of(cfg);
    if (!(std::abs(alpha) >= 2.0))
        fail(ErrorCode::InvalidArgument, "field 'alpha' must satisfy |alpha| >= 2");
    const OptimizerConfig oc = optimizer_config(cfg);
    const Optimum o = cfg.kz ? optimize_beta({alpha, *cfg.kz}, oc) : optimize_length(alpha, oc);

    CommandResult res;
    res.artifact.meta = base_meta(cfg);
    res.artifact.meta["mode"] = cfg.kz ? "fixed_length" : "optimal_length";
    res.artifact.meta["optimizer"] = optimizer_meta(oc);
    res.artifact.table.columns = kOptimumColumns;
    res.artifact.table.rows.push_back(optimum_row(o, alpha));
    res.summary = to_text(res.artifact.table);
    return res;
}

std::vector<double> kz_grid(const RunConfig& cfg) {
    if (!cfg.kz_values.empty()) {
        if (cfg.kz_min || cfg.kz_max || cfg.kz_points)
            fail(ErrorCode::InvalidArgument, "field 'kz_values' conflicts with 'kz_min'/'kz_max'/'kz_points'");
        return cfg.kz_values;
    }
    const double lo = require(cfg.kz_min, "kz_min"), hi = require(cfg.kz_max, "kz_max");
    const int n = cfg.kz_points.value_or(50);
    if (!(hi >= lo))
        fail(ErrorCode::InvalidArgument, "field 'kz_max' must be >= 'kz_min'");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
    const cplx alpha = alpha_of(cfg);
    if (!(std::abs(alpha) > 0.0))
        fail(ErrorCode::InvalidArgument, "field 'alpha' must be non-zero");
    OptimizerConfig oc = optimizer_config(cfg);
    const auto kzs = kz_grid(cfg);
    const auto optima = sweep_length(alpha, kzs, oc);

    CommandResult res;
    res.artifact.meta = base_meta(cfg);
    res.artifact.meta["optimizer"] = optimizer_meta(oc);
    res.artifact.meta["warm_start"] = oc.parallelism == 1 && oc.warm_start;
    res.artifact.table.columns = kOptimumColumns;
    for (const auto& o : optima)
        res.artifact.table.rows.push_back(optimum_row(o, alpha));
    res.summary = to_text(res.artifact.table);
    return res;
}

GridSpec grid_spec(const RunConfig& cfg) {
    GridSpec g;
    const std::string w = cfg.window.value_or("auto");
    g.window = w == "mean" ? WindowMode::Mean : w == "explicit" ? WindowMode::Explicit : WindowMode::Auto;
    if (cfg.half_width)
        g.half_width = *cfg.half_width;
    if (g.window == WindowMode::Explicit) {
        g.x_range = {require(cfg.x_min, "x_min"), require(cfg.x_max, "x_max")};
        g.y_range = {require(cfg.y_min, "y_min"), require(cfg.y_max, "y_max")};
    } else if (cfg.x_min || cfg.x_max || cfg.y_min || cfg.y_max) {
        fail(ErrorCode::InvalidArgument, "fields 'x_min'..'y_max' need window = explicit");
    }
    g.resolution = cfg.resolution.value_or(201);
    g.parallelism = cfg.parallel;
    return g;
}

Json state_meta(const FockState& s, cplx alpha, double kz, cplx beta) {
    const KerrScenario sc{alpha, kz};
    DisplacementSetting ds;
    ds.beta = beta;
    return Json{{"beta", complex_json(beta)},
                {"shift_amplitude", complex_json(ds.shift_amplitude(sc))},
                {"mean_field", complex_json(field_moment(s, 0, 1))},
                {"n_trunc", s.n_trunc()},
                {"tail_mass", s.tail_mass()}};
}

CommandResult cmd_wigner(const RunConfig& cfg) {
    const cplx alpha = alpha_of(cfg);
    const double kz = require(cfg.kz, "kz");
    const cplx beta = resolve_beta(cfg, alpha, kz);
    const FockState s = displaced_kerr_state(alpha, kz, beta, fock_config(cfg));
    const GridSpec spec = grid_spec(cfg);
    const WignerGrid g = wigner(s, spec);

    CommandResult res;
    Artifact& a = res.artifact;
    a.meta = base_meta(cfg);
    a.meta["state"] = state_meta(s, alpha, kz, beta);
    a.meta["window"] = to_string(spec.window);
    a.meta["x_range"] = Json::array({g.x_range.first, g.x_range.second});
    a.meta["y_range"] = Json::array({g.y_range.first, g.y_range.second});
    a.meta["resolution"] = g.resolution;
    a.meta["integral"] = grid_integral(g);
    a.meta["max_abs"] = grid_max_abs(g);
    a.meta["pure_state_bound"] = 2.0 / std::numbers::pi;

    a.table.columns = {"x", "y", "w"};
    Json xs = Json::array(), ys = Json::array(), rows = Json::array();
    for (int i = 0; i < g.resolution; ++i)
        xs.push_back(g.x(i));
    for (int j = 0; j < g.resolution; ++j) {
        ys.push_back(g.y(j));
        Json row = Json::array();
        for (int i = 0; i < g.resolution; ++i) {
            a.table.rows.push_back({g.x(i), g.y(j), g.at(i, j)});
            row.push_back(g.at(i, j));
        }
        rows.push_back(std::move(row));
    }
    a.json_data = Json{{"x", std::move(xs)}, {"y", std::move(ys)}, {"w", std::move(rows)}};

    Table t;
    t.columns = {"quantity", "value"};
    t.rows = {{std::string("resolution"), static_cast<long long>(g.resolution)},
              {std::string("x_min"), g.x_range.first},
              {std::string("x_max"), g.x_range.second},
              {std::string("y_min"), g.y_range.first},
              {std::string("y_max"), g.y_range.second},
              {std::string("integral"), grid_integral(g)},
              {std::string("max_abs"), grid_max_abs(g)}};
    res.summary = to_text(t);
    return res;
}

CommandResult cmd_photon_dist(const RunConfig& cfg) {
    const cplx alpha = alpha_of(cfg);
    const double kz = require(cfg.kz, "kz");
    const cplx beta = resolve_beta(cfg, alpha, kz);
    const FockState s = displaced_kerr_state(alpha, kz, beta, fock_config(cfg));
    const auto p = photon_distribution(s);
    const NumberMoments m = number_moments(s);

    CommandResult res;
    Artifact& a = res.artifact;
    a.meta = base_meta(cfg);
    a.meta["state"] = state_meta(s, alpha, kz, beta);
    a.meta["mean"] = m.mean;
    a.meta["variance"] = m.variance;
    if (m.mean > 0.0) {
        a.meta["fano"] = m.variance / m.mean;
        a.meta["mandel_q"] = m.variance / m.mean - 1.0;
    }
    a.table.columns = {"n", "probability", "poisson"};
    for (std::size_t n = 0; n < p.size(); ++n) {
        const double dn = static_cast<double>(n);
        const double poisson =
            m.mean > 0.0 ? std::exp(dn * std::log(m.mean) - m.mean - std::lgamma(dn + 1.0)) : (n == 0 ? 1.0 : 0.0);
        a.table.rows.push_back({static_cast<long long>(n), p[n], poisson});
    }
    Table t;
    t.columns = {"quantity", "value"};
    t.rows = {{std::string("mean"), m.mean}, {std::string("variance"), m.variance}};
    if (m.mean > 0.0)
        t.rows.push_back({std::string("fano"), m.variance / m.mean});
    res.summary = to_text(t);
    return res;
}

CommandResult cmd_design(const RunConfig& cfg) {
    const WaveguideSpec wg = waveguide_from(cfg);
    const double power = require(cfg.power, "power");
    CommandResult res;
    Artifact& a = res.artifact;
    a.meta = base_meta(cfg);
    a.meta["waveguide"] = Json{{"n2_m2_per_W", wg.n2}, {"n0", wg.n0}, {"sigma_eff_m2", wg.sigma_eff}, {"lambda_m", wg.lambda}};
    a.meta["constants"] = Json{{"c", phys::c}, {"hbar", phys::hbar}};
    Table& t = a.table;
    t.columns = {"quantity", "value", "unit"};
    const auto add = [&t](const char* q, double v, const char* unit) {
        t.rows.push_back({std::string(q), v, std::string(unit)});
    };
    add("gamma", gamma(wg), "1/(W m)");
    if (cfg.spectral_width) {
        const BeamSpec beam{power, *cfg.spectral_width};
        beam.validate();
        const double alpha = alpha_from_power(beam, wg);
        const double z = z_opt_physical(wg, beam);
        add("kerr_coupling", kerr_coupling(wg, beam), "1/m");
        add("alpha", alpha, "1");
        add("kz_opt", kz_opt_approx(alpha), "1");
        add("z_opt", z, "m");
        add("z_opt_engineering", z_opt_engineering(wg, beam), "m");
        add("fano_floor_db", fano_floor_physical(wg, beam), "dB");
        add("nonlinear_phase_at_z_opt", gamma(wg) * power * z, "rad");
    }
    if (cfg.target_db) {
        const LengthDesign d = length_for_suppression(*cfg.target_db, power, wg, cfg.spectral_width);
        add("target_db", *cfg.target_db, "dB");
        add("x", d.x, "1");
        add("z", d.z, "m");
        t.rows.push_back({std::string("regime"), std::string(d.short_length_regime ? "short_length" : "near_optimum"),
                          std::string("")});
    }
    if (!cfg.spectral_width && !cfg.target_db)
        fail(ErrorCode::InvalidArgument, "design needs field 'spectral_width' and/or 'target_db'");
    res.summary = to_text(t);
    return res;
}

CommandResult cmd_reproduce(const RunConfig& cfg) {
    if (!cfg.target)
        fail(ErrorCode::InvalidArgument, "missing required field 'target'");
    Reproduction r = reproduce(*cfg.target, cfg);
    CommandResult res;
    res.artifact = std::move(r.artifact);
    res.summary = to_text(res.artifact.table);
    int failed = 0;
    for (const auto& c : r.checks)
        if (c.asserted && !c.pass) {
            ++failed;
            res.summary += "MISS " + c.name + ": computed " + format_number(c.computed) + ", expected [" +
                           format_number(c.lower) + ", " + format_number(c.upper) + "]\n";
        }
    res.exit_code = failed ? kExitToleranceMiss : kExitOk;
    return res;
}

} // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonConvergence:
        return kExitConvergence;
    case ErrorCode::NumericalOverflow:
        return kExitOther;
    default:
        return kExitValidation;
    }
}

OptimizerConfig optimizer_config(const RunConfig& cfg) {
    OptimizerConfig oc;
    if (cfg.tol_simplex)
        oc.simplex_ftol = *cfg.tol_simplex;
    if (cfg.tol_length)
        oc.length_rel_tol = *cfg.tol_length;
    if (cfg.max_iterations)
        oc.simplex_max_iterations = *cfg.max_iterations;
    oc.parallelism = cfg.parallel;
    return oc;
}

FockConfig fock_config(const RunConfig& cfg) {
    FockConfig fc;
    if (cfg.tol_truncation)
        fc.truncation_tol = *cfg.tol_truncation;
    return fc;
}

WaveguideSpec waveguide_from(const RunConfig& cfg) {
    const bool inline_given = cfg.n2 || cfg.sigma_eff || cfg.lambda || cfg.n0;
    if (cfg.preset && inline_given)
        fail(ErrorCode::InvalidArgument, "give either 'preset' or inline waveguide fields, not both");
    if (cfg.preset)
        return resolve_preset(*cfg.preset);
    if (!inline_given)
        fail(ErrorCode::InvalidArgument, "missing waveguide: set 'preset' or 'n2', 'sigma_eff', 'lambda'");
    WaveguideSpec wg;
    wg.n2 = require(cfg.n2, "n2");
    wg.sigma_eff = require(cfg.sigma_eff, "sigma_eff");
    wg.lambda = require(cfg.lambda, "lambda");
    wg.n0 = cfg.n0.value_or(1.0);
    wg.validate();
    return wg;
}

FockState displaced_kerr_state(cplx alpha, double kz, cplx beta, const FockConfig& fock) {
    const KerrScenario sc{alpha, kz};
    sc.validate();
    DisplacementSetting ds;
    ds.beta = beta;
    const FockState kerr = kerr_evolve(coherent_state(alpha, fock.truncation_tol, fock), kz);
    const cplx shift = ds.shift_amplitude(sc);
    return shift == cplx{} ? kerr : displace(kerr, shift, fock);
}

CommandResult run_command(const RunConfig& cfg) {
    validate_config(cfg);
    if (cfg.command == "fano")
        return cmd_fano(cfg);
    if (cfg.command == "optimize")
        return cmd_optimize(cfg);
    if (cfg.command == "sweep-length")
        return cmd_sweep(cfg);
    if (cfg.command == "wigner")
        return cmd_wigner(cfg);
    if (cfg.command == "photon-dist")
        return cmd_photon_dist(cfg);
    if (cfg.command == "design")
        return cmd_design(cfg);
    return cmd_reproduce(cfg);
}

} // namespace dks::app
