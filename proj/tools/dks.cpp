#include "app/artifact.hpp"
#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/reproduce.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

using namespace dks;
using namespace dks::app;

namespace {

using Apply = std::function<void(RunConfig&)>;

struct Binder {
    std::vector<Apply> steps;

    template <class T>
    CLI::Option* bind(CLI::App* app, const std::string& names, std::optional<T> RunConfig::*field,
                      const std::string& help) {
        auto value = std::make_shared<T>();
        CLI::Option* o = app->add_option(names, *value, help);
        steps.push_back([o, value, field](RunConfig& c) {
            if (o->count() > 0)
                c.*field = *value;
        });
        return o;
    }
};

void add_common(CLI::App* sub, Binder& b, std::shared_ptr<std::string> config_path) {
    auto format = std::make_shared<std::string>();
    CLI::Option* f = sub->add_option("--format", *format, "Artifact format")->check(CLI::IsMember({"csv", "json"}));
    b.steps.push_back([f, format](RunConfig& c) {
        if (f->count() > 0)
            c.format = *format == "json" ? Format::Json : Format::Csv;
    });
    b.bind(sub, "--out", &RunConfig::out, "Write the artifact here instead of stdout");
    sub->add_option("--config", *config_path, "Key-value config file; command-line flags override it");
    auto parallel = std::make_shared<int>(1);
    CLI::Option* p = sub->add_option("--parallel", *parallel, "Worker threads for sweeps and grids");
    b.steps.push_back([p, parallel](RunConfig& c) {
        if (p->count() > 0)
            c.parallel = *parallel;
    });
    b.bind(sub, "--tol-simplex", &RunConfig::tol_simplex, "Simplex F-spread tolerance (default 1e-12)");
    b.bind(sub, "--tol-length", &RunConfig::tol_length, "Relative Kz tolerance of the length search (default 1e-6)");
    b.bind(sub, "--tol-truncation", &RunConfig::tol_truncation, "Fock truncation tolerance (default 1e-12)");
    b.bind(sub, "--max-iterations", &RunConfig::max_iterations, "Simplex iteration cap (default 10000)");
}

void add_scenario(CLI::App* sub, Binder& b, bool kz_positional) {
    b.bind(sub, "alpha,--alpha", &RunConfig::alpha, "Input amplitude (real part)");
    b.bind(sub, "--alpha-im", &RunConfig::alpha_im, "Input amplitude (imaginary part)");
    b.bind(sub, kz_positional ? "kz,--kz" : "--kz", &RunConfig::kz, "Kerr phase parameter K*z");
}

void add_beta(CLI::App* sub, Binder& b) {
    b.bind(sub, "--beta-re", &RunConfig::beta_re, "Normalised shift, real part");
    b.bind(sub, "--beta-im", &RunConfig::beta_im, "Normalised shift, imaginary part");
    b.bind(sub, "--tau", &RunConfig::tau, "Beam-splitter transmission");
}

void add_optimal_flag(CLI::App* sub, Binder& b) {
    auto flag = std::make_shared<bool>(false);
    CLI::Option* o = sub->add_flag("--optimal-beta", *flag, "Use the optimal shift at (alpha, kz)");
    b.steps.push_back([o, flag](RunConfig& c) {
        if (o->count() > 0)
            c.optimal_beta = *flag;
    });
}

void add_waveguide(CLI::App* sub, Binder& b, bool preset_positional) {
    b.bind(sub, preset_positional ? "preset,--preset" : "--preset", &RunConfig::preset,
           "Material preset name (si3n4) or preset file path");
    b.bind(sub, "--n2", &RunConfig::n2, "Kerr index n2 [m^2/W]");
    b.bind(sub, "--n0", &RunConfig::n0, "Linear refractive index");
    b.bind(sub, "--sigma-eff", &RunConfig::sigma_eff, "Effective mode area [m^2]");
    b.bind(sub, "--lambda", &RunConfig::lambda, "Vacuum wavelength [m]");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const RunConfig& cfg, const CommandResult& r) {
    const std::string body = render(r.artifact, cfg.format);
    if (cfg.out) {
        write_file(*cfg.out, body);
        std::cout << r.summary;
    } else {
        std::cout << body;
        std::cerr << r.summary;
    }
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Displaced Kerr states: exact Fano factors, optimisation, Wigner grids and waveguide design"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("dks ") + DKS_VERSION);

    std::map<std::string, std::pair<Binder, std::shared_ptr<std::string>>> binders;
    const auto make = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto& entry = binders[name];
        entry.second = std::make_shared<std::string>();
        add_common(sub, entry.first, entry.second);
        return std::pair<CLI::App*, Binder*>{sub, &entry.first};
    };

    {
        auto [sub, b] = make("fano", "Exact Fano factor of the displaced Kerr state");
        add_scenario(sub, *b, true);
        add_beta(sub, *b);
    }
    {
        auto [sub, b] = make("optimize", "Optimal shift (and length when --kz is absent)");
        add_scenario(sub, *b, false);
    }
    {
        auto [sub, b] = make("sweep-length", "Optimal Fano factor along a Kz grid");
        add_scenario(sub, *b, false);
        auto values = std::make_shared<std::vector<double>>();
        CLI::Option* o = sub->add_option("--kz-values", *values, "Sorted Kz values")->delimiter(',');
        b->steps.push_back([o, values](RunConfig& c) {
            if (o->count() > 0)
                c.kz_values = *values;
        });
        b->bind(sub, "--kz-min", &RunConfig::kz_min, "Grid start");
        b->bind(sub, "--kz-max", &RunConfig::kz_max, "Grid end");
        b->bind(sub, "--kz-points", &RunConfig::kz_points, "Grid points (default 50)");
    }
    for (const char* name : {"wigner", "photon-dist"}) {
        auto [sub, b] = make(name, std::string(name) == "wigner" ? "Wigner function on a phase-space grid"
                                                                 : "Photon-number distribution");
        add_scenario(sub, *b, true);
        add_beta(sub, *b);
        add_optimal_flag(sub, *b);
        if (std::string(name) == "wigner") {
            b->bind(sub, "--window", &RunConfig::window, "auto | mean | explicit")
                ->check(CLI::IsMember({"auto", "mean", "explicit"}));
            b->bind(sub, "--half-width", &RunConfig::half_width, "Half-width of the mean window");
            b->bind(sub, "--x-min", &RunConfig::x_min, "Explicit window");
            b->bind(sub, "--x-max", &RunConfig::x_max, "Explicit window");
            b->bind(sub, "--y-min", &RunConfig::y_min, "Explicit window");
            b->bind(sub, "--y-max", &RunConfig::y_max, "Explicit window");
            b->bind(sub, "--resolution", &RunConfig::resolution, "Points per axis (default 201)");
        }
    }
    {
        auto [sub, b] = make("design", "Physical design numbers for a waveguide and beam");
        b->bind(sub, "power,--power", &RunConfig::power, "Optical power [W]");
        b->bind(sub, "spectral_width,--spectral-width", &RunConfig::spectral_width, "Spectral width [Hz]");
        add_waveguide(sub, *b, true);
        b->bind(sub, "--target-db,--target", &RunConfig::target_db, "Target suppression [dB] for the length estimate");
    }
    {
        auto [sub, b] = make("reproduce", "Regenerate a reference table or figure with deltas");
        b->bind(sub, "target,--target", &RunConfig::target, "table1 | table2 | table3 | fig3 | fig4 | fig5")
            ->check(CLI::IsMember(reproduce_targets()));
    }
    std::string rerun_path;
    CLI::App* rerun = app.add_subcommand("rerun", "Re-run the config embedded in an artifact");
    rerun->add_option("artifact", rerun_path, "CSV or JSON artifact")->required();
    std::string rerun_out;
    CLI::Option* rerun_out_opt = rerun->add_option("--out", rerun_out, "Write the artifact here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        RunConfig cfg;
        if (rerun->parsed()) {
            cfg = parse_config(embedded_config(read_file(rerun_path)));
            if (rerun_out_opt->count() > 0)
                cfg.out = rerun_out;
        } else {
            for (auto& [name, entry] : binders) {
                CLI::App* sub = app.get_subcommand(name);
                if (!sub->parsed())
                    continue;
                if (!entry.second->empty())
                    cfg = load_config_file(*entry.second);
                cfg.command = name;
                for (const auto& step : entry.first.steps)
                    step(cfg);
            }
        }
        return emit(cfg, run_command(cfg));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOther;
    }
}
