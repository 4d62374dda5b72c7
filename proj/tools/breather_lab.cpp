// breather-lab: simulate the nonlinear nonreciprocal chain, its reciprocal and
// ladder companions, and the static-chain spectral theory; emit CSV/SVG.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "breather/creutz.hpp"
#include "breather/csv.hpp"
#include "breather/experiment.hpp"
#include "breather/linear_spectral.hpp"

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitNumericalError = 2;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw breather::ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    int workers = 0;
    double dt_override = 0.0;
    double tfinal_override = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* opt = cmd->add_option("--config", args.config_path, "JSON experiment config");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--workers", args.workers, "worker threads for sweeps");
    cmd->add_option("--dt", args.dt_override, "override integrator step");
    cmd->add_option("--tfinal", args.tfinal_override, "override final time");
}

breather::ExperimentConfig load(const CommonArgs& args, const std::string& default_name) {
    auto cfg = breather::parse_config(read_file(args.config_path));
    if (cfg.name == "run") cfg.name = default_name;
    if (args.dt_override > 0.0) cfg.dt = args.dt_override;
    if (args.tfinal_override > 0.0) cfg.t_final = args.tfinal_override;
    if (!(cfg.t_final >= cfg.dt))
        throw breather::ConfigError("t_final must be >= dt after overrides");
    return cfg;
}

void print_record(const breather::RunRecord& record) {
    std::cout << record.config.name << ": " << record.output_files.size() << " file(s) in "
              << breather::format_double(record.wall_seconds) << " s";
    if (record.blew_up) std::cout << " [blow-up at t = " << record.blowup_time << "]";
    std::cout << "\n";
    for (const auto& f : record.output_files) std::cout << "  " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation lab for the saturable nonreciprocal chain"};
    app.require_subcommand(1);

    CommonArgs evolve_args, sweep_args, spectrum_args, defect_args, creutz_args, hermitian_args;
    CommonArgs figures_args;

    auto* cmd_evolve = app.add_subcommand("evolve", "single time-domain run");
    add_common(cmd_evolve, evolve_args);
    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep");
    add_common(cmd_sweep, sweep_args);
    auto* cmd_spectrum = app.add_subcommand("spectrum", "static-chain spectrum");
    add_common(cmd_spectrum, spectrum_args);
    auto* cmd_defect = app.add_subcommand("defect", "closed-form end-defect bundle");
    add_common(cmd_defect, defect_args);
    auto* cmd_creutz = app.add_subcommand("creutz-check", "ladder-picture consistency check");
    add_common(cmd_creutz, creutz_args);
    auto* cmd_hermitian =
        app.add_subcommand("hermitian-compare", "reciprocal comparison chain run");
    add_common(cmd_hermitian, hermitian_args);
    auto* cmd_figures = app.add_subcommand("figures", "run the full reproduction suite");
    add_common(cmd_figures, figures_args, /*config_required=*/false);

    CLI11_PARSE(app, argc, argv);

    int exit_code = 0;
    auto run_and_print = [&exit_code](const breather::ExperimentConfig& cfg,
                                      const CommonArgs& args) {
        const auto record = breather::run_experiment(cfg, {args.out_dir, args.workers});
        print_record(record);
        if (record.blew_up) exit_code = kExitNumericalError;
    };

    try {
        if (cmd_evolve->parsed()) {
            auto cfg = load(evolve_args, "evolve");
            if (cfg.outputs.empty()) cfg.outputs = {"trajectory", "averages", "period", "heatmap"};
            run_and_print(cfg, evolve_args);
        } else if (cmd_sweep->parsed()) {
            auto cfg = load(sweep_args, "sweep");
            if (!cfg.sweep) throw breather::ConfigError("sweep subcommand needs a 'sweep' block");
            run_and_print(cfg, sweep_args);
        } else if (cmd_spectrum->parsed()) {
            auto cfg = load(spectrum_args, "spectrum");
            cfg.outputs = {"spectrum"};
            run_and_print(cfg, spectrum_args);
        } else if (cmd_defect->parsed()) {
            auto cfg = load(defect_args, "defect");
            cfg.outputs = {"defect"};
            run_and_print(cfg, defect_args);
        } else if (cmd_creutz->parsed()) {
            auto cfg = load(creutz_args, "creutz-check");
            breather::State psi0(static_cast<std::size_t>(cfg.params.n_sites()));
            psi0[0] = std::sqrt(cfg.i_in);
            const double dev =
                breather::equivalence_check(cfg.params, psi0, cfg.t_final, cfg.dt);
            breather::CsvWriter csv({"t_final", "dt", "max_relative_deviation"});
            csv.add_row({breather::CsvWriter::field(cfg.t_final),
                         breather::CsvWriter::field(cfg.dt), breather::CsvWriter::field(dev)});
            const std::string path = creutz_args.out_dir + "/" + cfg.name + "-equivalence.csv";
            csv.write_file(path);
            std::cout << "max relative intensity deviation: " << breather::format_double(dev)
                      << "\n  " << path << "\n";
        } else if (cmd_hermitian->parsed()) {
            auto cfg = load(hermitian_args, "hermitian-compare");
            cfg.model = breather::ModelKind::hermitian;
            if (cfg.outputs.empty()) cfg.outputs = {"trajectory", "averages", "period", "heatmap"};
            run_and_print(cfg, hermitian_args);
        } else if (cmd_figures->parsed()) {
            breather::run_figures(figures_args.out_dir, figures_args.workers);
            std::cout << "figure suite written to " << figures_args.out_dir << "\n";
        }
    } catch (const breather::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const breather::BlowUpError& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return kExitNumericalError;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return kExitNumericalError;
    }
    return exit_code;
}
