#pragma once

#include <string>
#include <vector>

#include "breather/config.hpp"
#include "breather/evolve.hpp"

namespace breather {

struct RunOptions {
    std::string out_dir = ".";
    int workers = 0;  // 0 = resolve from env / hardware
};

struct RunRecord {
    ExperimentConfig config;
    std::vector<std::string> output_files;
    double wall_seconds = 0.0;
    double max_intensity = 0.0;
    bool blew_up = false;
    double blowup_time = 0.0;
};

/// One row of a sweep: the axis value plus the derived observables.
/// `period_linear` is pi/E_d of the effective static chain with
/// gamma_1 = gammas, gamma_2 = the measured gamma_bar_2, gamma_{n>2} = gamma0
/// (nonreciprocal model only).
struct SweepPoint {
    double value = 0.0;
    double i_bar1_over_ibar = 0.0;
    double ibar_over_iin = 0.0;
    double gamma_bar_1 = 0.0;
    double gamma_bar_2 = 0.0;
    double gamma_bar_3 = 0.0;
    std::optional<double> period;
    std::optional<double> period_linear;
    bool blew_up = false;
};

/// Worker count: explicit argument, else BREATHER_LAB_WORKERS, else hardware.
int resolve_workers(int requested);

/// Evolves one configured run (dispatching on the model kind) and returns the
/// trajectory in the lattice-site picture.
Trajectory run_trajectory(const ExperimentConfig& config);

/// Computes all sweep rows; points are distributed over `workers` threads and
/// the result order is the grid order regardless of scheduling.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& config, int workers);

/// Runs the experiment and emits the declared artifacts plus a JSON record.
RunRecord run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Writes the full figure-reproduction suite into out_dir.
void run_figures(const std::string& out_dir, int workers);

}  // namespace breather
