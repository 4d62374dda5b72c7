#include "breather/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "breather/creutz.hpp"
#include "breather/csv.hpp"
#include "breather/hermitian_ssh.hpp"
#include "breather/linear_spectral.hpp"
#include "breather/svg.hpp"

namespace breather {

namespace fs = std::filesystem;

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BREATHER_LAB_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

State single_site_state(const ExperimentConfig& cfg) {
    State psi(static_cast<std::size_t>(cfg.params.n_sites()), Complex(0.0, 0.0));
    psi[0] = std::sqrt(cfg.i_in);
    return psi;
}

std::vector<double> effective_profile(const ExperimentConfig& cfg) {
    std::vector<double> prof(static_cast<std::size_t>(cfg.params.n_cells), cfg.params.gamma0);
    if (cfg.profile.empty()) {
        prof[0] = cfg.params.gammas;
    } else {
        for (std::size_t c = 0; c < cfg.profile.size(); ++c) prof[c] = cfg.profile[c];
    }
    return prof;
}

double model_gamma_crit(const ExperimentConfig& cfg) {
    if (cfg.model == ModelKind::hermitian) return reciprocal_gamma_crit(cfg.params);
    return cfg.params.gamma_crit();
}

/// pi / E_d of the static chain gamma = (gammas, g2, gamma0, ...), from the
/// tridiagonal eigenvalues; empty when no state lies in the gap.
std::optional<double> linear_period(const LatticeParams& p, double g2) {
    std::vector<double> prof(static_cast<std::size_t>(p.n_cells), p.gamma0);
    prof[0] = p.gammas;
    prof[1] = std::max(g2, p.gamma0);
    if (prof[0] >= p.kappa || prof[1] >= p.kappa) return std::nullopt;
    const auto model = build_linear_model(p.kappa, p.nu, prof);
    const auto eigenvalues = eigensolve_values(model);
    const double edge = model.gap_edge() - 1e-6 * p.nu;
    double e_d = 0.0;
    bool found = false;
    for (double e : eigenvalues) {
        if (std::abs(e) < edge && (!found || std::abs(e) < e_d)) {
            e_d = std::abs(e);
            found = true;
        }
    }
    if (!found || e_d <= 0.0) return std::nullopt;
    return M_PI / e_d;
}

int period_cell(const AveragedObservables& avg) {
    int cell = 0;
    for (std::size_t c = 1; c < avg.i_bar_cells.size(); ++c)
        if (avg.i_bar_cells[c] > avg.i_bar_cells[static_cast<std::size_t>(cell)])
            cell = static_cast<int>(c);
    return cell;
}

SweepPoint evaluate_point(const ExperimentConfig& base, double value) {
    ExperimentConfig cfg = base;
    if (cfg.sweep->parameter == "i_in") cfg.i_in = value;
    else if (cfg.sweep->parameter == "gamma0") cfg.params.gamma0 = value;
    else if (cfg.sweep->parameter == "gammas") cfg.params.gammas = value;
    else if (cfg.sweep->parameter == "kappa") cfg.params.kappa = value;
    else if (cfg.sweep->parameter == "nu") cfg.params.nu = value;
    else cfg.params.i_sat = value;
    cfg.params.validate();

    SweepPoint point;
    point.value = value;
    Trajectory traj;
    try {
        traj = run_trajectory(cfg);
    } catch (const BlowUpError& err) {
        point.blew_up = true;
        traj = err.partial;
        if (traj.times.empty() || traj.times.back() < cfg.window_end) return point;
    }
    const auto avg = averaged_observables(traj, cfg.params, cfg.window_start, cfg.window_end);
    point.i_bar1_over_ibar = avg.i_bar_total > 0.0 ? avg.i_bar_cells[0] / avg.i_bar_total : 0.0;
    point.ibar_over_iin = cfg.i_in > 0.0 ? avg.i_bar_total / cfg.i_in : 0.0;
    point.gamma_bar_1 = avg.gamma_bar_cells.size() > 0 ? avg.gamma_bar_cells[0] : 0.0;
    point.gamma_bar_2 = avg.gamma_bar_cells.size() > 1 ? avg.gamma_bar_cells[1] : 0.0;
    point.gamma_bar_3 = avg.gamma_bar_cells.size() > 2 ? avg.gamma_bar_cells[2] : 0.0;
    point.period = extract_period(traj, period_cell(avg), cfg.window_start);
    if (cfg.model == ModelKind::nonreciprocal)
        point.period_linear = linear_period(cfg.params, point.gamma_bar_2);
    return point;
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

void emit_trajectory(const ExperimentConfig& cfg, const Trajectory& traj,
                     const std::string& path_csv, const std::string& path_svg,
                     std::vector<std::string>& files) {
    std::vector<std::string> header = {"t"};
    for (int c = 1; c <= traj.n_cells(); ++c) header.push_back("I_" + std::to_string(c));
    if (cfg.store_amplitudes)
        for (int j = 1; j <= 2 * traj.n_cells(); ++j) {
            header.push_back("re_psi_" + std::to_string(j));
            header.push_back("im_psi_" + std::to_string(j));
        }
    CsvWriter csv(header);
    for (std::size_t k = 0; k < traj.n_samples(); ++k) {
        std::vector<std::string> row = {CsvWriter::field(traj.times[k])};
        for (double v : cell_intensities(traj.states[k])) row.push_back(CsvWriter::field(v));
        if (cfg.store_amplitudes)
            for (const auto& amp : traj.states[k]) {
                row.push_back(CsvWriter::field(amp.real()));
                row.push_back(CsvWriter::field(amp.imag()));
            }
        csv.add_row(row);
    }
    csv.write_file(path_csv);
    files.push_back(path_csv);

    std::vector<Series> series;
    const int shown = std::min(5, traj.n_cells());
    for (int c = 0; c < shown; ++c) {
        Series s;
        s.label = "I_" + std::to_string(c + 1);
        for (std::size_t k = 0; k < traj.n_samples(); ++k) {
            s.x.push_back(traj.times[k]);
            const auto& st = traj.states[k];
            s.y.push_back(std::norm(st[2 * static_cast<std::size_t>(c)]) +
                          std::norm(st[2 * static_cast<std::size_t>(c) + 1]));
        }
        series.push_back(std::move(s));
    }
    write_line_plot(path_svg, series,
                    {cfg.name + ": cell intensities", "t (1/nu)", "I_n", false, false});
    files.push_back(path_svg);
}

void emit_averages(const AveragedObservables& avg, const std::string& path,
                   std::vector<std::string>& files) {
    CsvWriter csv({"n", "i_bar", "i_bar_over_total", "gamma_bar"});
    for (std::size_t c = 0; c < avg.i_bar_cells.size(); ++c)
        csv.add_row({CsvWriter::field(static_cast<int>(c + 1)),
                     CsvWriter::field(avg.i_bar_cells[c]),
                     CsvWriter::field(avg.i_bar_total > 0.0
                                          ? avg.i_bar_cells[c] / avg.i_bar_total
                                          : 0.0),
                     CsvWriter::field(avg.gamma_bar_cells[c])});
    csv.write_file(path);
    files.push_back(path);
}

void emit_heatmap(const ExperimentConfig& cfg, const Trajectory& traj, const std::string& path_csv,
                  const std::string& path_svg, std::vector<std::string>& files) {
    const auto map = phase_heatmap(traj, cfg.params, model_gamma_crit(cfg));
    std::vector<std::string> header;
    for (int c = 1; c <= traj.n_cells(); ++c) header.push_back("cell_" + std::to_string(c));
    CsvWriter csv(header);
    for (std::size_t k = 0; k < map.size(); ++k) {
        std::vector<std::string> row;
        row.reserve(map[k].size());
        for (auto v : map[k]) row.push_back(v ? "1" : "0");
        csv.add_row(row);
    }
    csv.write_file(path_csv);
    files.push_back(path_csv);
    write_binary_heatmap(path_svg, map, traj.times, cfg.name + ": local phase map");
    files.push_back(path_svg);
}

void emit_spectrum(const ExperimentConfig& cfg, const std::string& path_csv,
                   const std::string& path_svg, std::vector<std::string>& files) {
    const auto model = build_linear_model(cfg.params.kappa, cfg.params.nu, effective_profile(cfg));
    const auto spectral = eigensolve(model);
    CsvWriter csv({"index", "energy", "in_gap"});
    for (std::size_t k = 0; k < spectral.eigenvalues.size(); ++k) {
        const bool in_gap = std::find(spectral.in_gap.begin(), spectral.in_gap.end(), k) !=
                            spectral.in_gap.end();
        csv.add_row({CsvWriter::field(static_cast<int>(k + 1)),
                     CsvWriter::field(spectral.eigenvalues[k]), in_gap ? "1" : "0"});
    }
    csv.write_file(path_csv);
    files.push_back(path_csv);

    Series s;
    s.label = "E_k";
    for (std::size_t k = 0; k < spectral.eigenvalues.size(); ++k) {
        s.x.push_back(static_cast<double>(k + 1));
        s.y.push_back(spectral.eigenvalues[k]);
    }
    write_line_plot(path_svg, {s},
                    {cfg.name + ": spectrum of the static chain", "eigenvalue index",
                     "E (units of nu)", false, false});
    files.push_back(path_svg);
}

void emit_defect(const ExperimentConfig& cfg, const std::string& path,
                 std::vector<std::string>& files) {
    const auto sol = analytic_defect(cfg.params.kappa, cfg.params.nu, cfg.params.gammas,
                                     cfg.params.gamma0);
    CsvWriter csv({"kappa_d", "kappa_0", "a", "b", "r", "norm_sq", "e_d", "period", "weight",
                   "gamma_sc", "gamma_0c", "kappa_sc", "kappa_0c", "bound", "localized"});
    csv.add_row({CsvWriter::field(sol.kappa_d), CsvWriter::field(sol.kappa_0),
                 CsvWriter::field(sol.a), CsvWriter::field(sol.b), CsvWriter::field(sol.r),
                 CsvWriter::field(sol.norm_sq), CsvWriter::field(sol.e_d),
                 CsvWriter::field(sol.period), CsvWriter::field(sol.weight),
                 CsvWriter::field(sol.gamma_sc), CsvWriter::field(sol.gamma_0c),
                 CsvWriter::field(sol.kappa_sc), CsvWriter::field(sol.kappa_0c),
                 sol.bound ? "1" : "0", sol.localized ? "1" : "0"});
    csv.write_file(path);
    files.push_back(path);
}

void emit_period(const ExperimentConfig& cfg, const Trajectory& traj,
                 const AveragedObservables& avg, const std::string& path,
                 std::vector<std::string>& files) {
    const int cell = period_cell(avg);
    const auto period = extract_period(traj, cell, cfg.window_start);
    CsvWriter csv({"cell", "period", "valid"});
    csv.add_row({CsvWriter::field(cell + 1), CsvWriter::field(period), period ? "1" : "0"});
    csv.write_file(path);
    files.push_back(path);
}

void emit_sweep(const ExperimentConfig& cfg, const std::vector<SweepPoint>& points,
                const std::string& path_csv, const std::string& path_svg,
                std::vector<std::string>& files) {
    CsvWriter csv({cfg.sweep->parameter, "i_bar1_over_ibar", "ibar_over_iin", "gamma_bar_1",
                   "gamma_bar_2", "gamma_bar_3", "period", "period_linear", "blew_up"});
    for (const auto& p : points)
        csv.add_row({CsvWriter::field(p.value), CsvWriter::field(p.i_bar1_over_ibar),
                     CsvWriter::field(p.ibar_over_iin), CsvWriter::field(p.gamma_bar_1),
                     CsvWriter::field(p.gamma_bar_2), CsvWriter::field(p.gamma_bar_3),
                     CsvWriter::field(p.period), CsvWriter::field(p.period_linear),
                     p.blew_up ? "1" : "0"});
    csv.write_file(path_csv);
    files.push_back(path_csv);

    Series s1{"I1_bar / I_bar", {}, {}}, s2{"I_bar / I_in", {}, {}};
    for (const auto& p : points) {
        s1.x.push_back(p.value);
        s1.y.push_back(p.i_bar1_over_ibar);
        s2.x.push_back(p.value);
        s2.y.push_back(p.ibar_over_iin);
    }
    write_line_plot(path_svg, {s1, s2},
                    {cfg.name + ": sweep over " + cfg.sweep->parameter, cfg.sweep->parameter,
                     "relative intensity", cfg.sweep->log_spacing, false});
    files.push_back(path_svg);
}

}  // namespace

Trajectory run_trajectory(const ExperimentConfig& cfg) {
    const State psi0 = single_site_state(cfg);
    switch (cfg.model) {
        case ModelKind::nonreciprocal:
            return integrate(cfg.params, psi0, cfg.t_final, cfg.dt, cfg.stride);
        case ModelKind::hermitian:
            return integrate_reciprocal(cfg.params, psi0, cfg.t_final, cfg.dt, cfg.stride);
        case ModelKind::creutz: {
            // Evolve in the ladder picture, report in the lattice picture.
            cfg.params.validate();
            const auto cs0 = to_creutz(psi0);
            const std::size_t n = cs0.phi_c.size();
            State phi0(2 * n);
            for (std::size_t c = 0; c < n; ++c) {
                phi0[2 * c] = cs0.phi_c[c];
                phi0[2 * c + 1] = cs0.phi_d[c];
            }
            const LatticeParams& p = cfg.params;
            std::vector<double> gamma(n);
            const Complex kI(0.0, 1.0);
            Trajectory traj = integrate_rk4(
                [&p, &gamma, n, kI](const State& y, State& out) {
                    for (std::size_t c = 0; c < n; ++c) {
                        const double intensity = std::norm(y[2 * c]) + std::norm(y[2 * c + 1]);
                        const double x = intensity / p.i_sat;
                        gamma[c] = (p.gamma0 + p.gammas * x) / (1.0 + x);
                    }
                    const double half_nu = 0.5 * p.nu;
                    for (std::size_t c = 0; c < n; ++c) {
                        Complex oc = kI * gamma[c] * y[2 * c] + p.kappa * y[2 * c + 1];
                        Complex od = -kI * gamma[c] * y[2 * c + 1] + p.kappa * y[2 * c];
                        if (c > 0) {
                            oc += half_nu * (kI * y[2 * c - 2] + y[2 * c - 1]);
                            od += half_nu * (-kI * y[2 * c - 1] + y[2 * c - 2]);
                        }
                        if (c + 1 < n) {
                            oc += half_nu * (-kI * y[2 * c + 2] + y[2 * c + 3]);
                            od += half_nu * (kI * y[2 * c + 3] + y[2 * c + 2]);
                        }
                        out[2 * c] = oc;
                        out[2 * c + 1] = od;
                    }
                },
                phi0, cfg.t_final, cfg.dt, cfg.stride);
            for (auto& state : traj.states) {
                CreutzState cs;
                cs.phi_c.resize(n);
                cs.phi_d.resize(n);
                for (std::size_t c = 0; c < n; ++c) {
                    cs.phi_c[c] = state[2 * c];
                    cs.phi_d[c] = state[2 * c + 1];
                }
                state = from_creutz(cs);
            }
            return traj;
        }
    }
    throw std::logic_error("run_trajectory: unreachable");
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg, int workers) {
    if (!cfg.sweep) throw std::invalid_argument("run_sweep: config has no sweep");
    const int count = cfg.sweep->count;
    std::vector<SweepPoint> points(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                points[static_cast<std::size_t>(i)] = evaluate_point(cfg, cfg.sweep->value_at(i));
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);  // drain remaining work
        }
    };
    const int n_threads = std::max(1, std::min(resolve_workers(workers), count));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return points;
}

RunRecord run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
    const auto t_begin = std::chrono::steady_clock::now();
    fs::create_directories(options.out_dir);

    RunRecord record;
    record.config = cfg;
    auto out = [&](const std::string& suffix) { return join_path(options.out_dir, cfg.name + "-" + suffix); };

    if (cfg.sweep) {
        const auto points = run_sweep(cfg, options.workers);
        for (const auto& p : points) record.blew_up = record.blew_up || p.blew_up;
        emit_sweep(cfg, points, out("sweep.csv"), out("sweep.svg"), record.output_files);
    } else {
        std::vector<std::string> outputs = cfg.outputs;
        if (outputs.empty()) outputs = {"trajectory", "averages", "period", "heatmap"};

        const bool needs_trajectory =
            std::find_if(outputs.begin(), outputs.end(), [](const std::string& o) {
                return o != "spectrum" && o != "defect";
            }) != outputs.end();

        Trajectory traj;
        if (needs_trajectory) {
            try {
                traj = run_trajectory(cfg);
            } catch (const BlowUpError& err) {
                record.blew_up = true;
                record.blowup_time = err.time;
                traj = err.partial;
            }
            for (const auto& state : traj.states) {
                double total = 0.0;
                for (const auto& amp : state) total += std::norm(amp);
                record.max_intensity = std::max(record.max_intensity, total);
            }
        }

        for (const auto& kind : outputs) {
            if (kind == "trajectory" && !traj.times.empty())
                emit_trajectory(cfg, traj, out("trajectory.csv"), out("trajectory.svg"),
                                record.output_files);
            else if (kind == "averages" && !traj.times.empty() &&
                     traj.times.back() >= cfg.window_end)
                emit_averages(averaged_observables(traj, cfg.params, cfg.window_start,
                                                   cfg.window_end),
                              out("averages.csv"), record.output_files);
            else if (kind == "period" && !traj.times.empty() &&
                     traj.times.back() >= cfg.window_end)
                emit_period(cfg, traj,
                            averaged_observables(traj, cfg.params, cfg.window_start,
                                                 cfg.window_end),
                            out("period.csv"), record.output_files);
            else if (kind == "heatmap" && !traj.times.empty())
                emit_heatmap(cfg, traj, out("heatmap.csv"), out("heatmap.svg"),
                             record.output_files);
            else if (kind == "spectrum")
                emit_spectrum(cfg, out("spectrum.csv"), out("spectrum.svg"),
                              record.output_files);
            else if (kind == "defect")
                emit_defect(cfg, out("defect.csv"), record.output_files);
        }
    }

    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();

    nlohmann::json rec;
    rec["config"] = nlohmann::json::parse(serialize_config(cfg));
    rec["output_files"] = record.output_files;
    rec["wall_seconds"] = record.wall_seconds;
    rec["max_intensity"] = record.max_intensity;
    rec["blew_up"] = record.blew_up;
    if (record.blew_up) rec["blowup_time"] = record.blowup_time;
    std::ofstream f(out("record.json"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + out("record.json"));
    f << rec.dump(2) << "\n";
    return record;
}

namespace {

ExperimentConfig suite_config(const std::string& name, double gamma0, double gammas,
                              double i_in) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.model = ModelKind::nonreciprocal;
    cfg.params = {100, std::sqrt(2.0), 1.0, gamma0, gammas, 1.0};
    cfg.i_in = i_in;
    cfg.t_final = 100.0;
    cfg.dt = 1e-3;
    cfg.stride = 50;
    cfg.window_start = 50.0;
    cfg.window_end = 100.0;
    return cfg;
}

}  // namespace

void run_figures(const std::string& out_dir, int workers) {
    const double root7_half = std::sqrt(7.0) / 2.0;
    RunOptions options{out_dir, workers};

    // fig1b/c/d: the three response regimes.
    run_experiment(suite_config("fig1b", 0.0, 0.5, 1e3), options);
    run_experiment(suite_config("fig1c", 1.2, root7_half, 1e3), options);
    auto fig1d = suite_config("fig1d", 0.0, root7_half, 1e3);
    fig1d.store_amplitudes = true;
    run_experiment(fig1d, options);

    // fig2: input-intensity sweep. Longer runs so the slow post-jump
    // oscillation still shows >= 3 peaks after the transient.
    auto fig2 = suite_config("fig2", 0.0, root7_half, 1e3);
    fig2.t_final = 150.0;
    fig2.sweep = SweepSpec{"i_in", 10.0, 1e4, 41, true};
    run_experiment(fig2, options);

    // fig2d: site-resolved intensities in the first cell.
    {
        const auto traj = run_trajectory(fig1d);
        CsvWriter csv({"t", "I_site1", "I_site2"});
        for (std::size_t k = 0; k < traj.n_samples(); ++k)
            csv.add_row({CsvWriter::field(traj.times[k]),
                         CsvWriter::field(std::norm(traj.states[k][0])),
                         CsvWriter::field(std::norm(traj.states[k][1]))});
        const std::string path = (fs::path(out_dir) / "fig2d-sites.csv").string();
        csv.write_file(path);
        Series s1{"site 1", {}, {}}, s2{"site 2", {}, {}};
        for (std::size_t k = 0; k < traj.n_samples(); ++k) {
            s1.x.push_back(traj.times[k]);
            s1.y.push_back(std::norm(traj.states[k][0]));
            s2.x.push_back(traj.times[k]);
            s2.y.push_back(std::norm(traj.states[k][1]));
        }
        write_line_plot((fs::path(out_dir) / "fig2d-sites.svg").string(), {s1, s2},
                        {"fig2d: first-cell site intensities", "t (1/nu)", "|psi_j|^2", false,
                         false});
    }

    // fig2e: averaged spatial profiles at two drive strengths.
    {
        CsvWriter csv({"n", "ibar_over_iin_1e3", "ibar_over_iin_6e3"});
        auto profile_at = [&](double i_in) {
            auto cfg = suite_config("tmp", 0.0, root7_half, i_in);
            const auto traj = run_trajectory(cfg);
            const auto avg = averaged_observables(traj, cfg.params, 50.0, 100.0);
            std::vector<double> out(avg.i_bar_cells.size());
            for (std::size_t c = 0; c < out.size(); ++c) out[c] = avg.i_bar_cells[c] / i_in;
            return out;
        };
        const auto p1 = profile_at(1e3), p2 = profile_at(6e3);
        Series s1{"I_in = 1e3", {}, {}}, s2{"I_in = 6e3", {}, {}};
        for (std::size_t c = 0; c < p1.size(); ++c) {
            csv.add_row({CsvWriter::field(static_cast<int>(c + 1)), CsvWriter::field(p1[c]),
                         CsvWriter::field(p2[c])});
            s1.x.push_back(static_cast<double>(c + 1));
            s1.y.push_back(p1[c]);
            s2.x.push_back(static_cast<double>(c + 1));
            s2.y.push_back(p2[c]);
        }
        csv.write_file((fs::path(out_dir) / "fig2e-profile.csv").string());
        write_line_plot((fs::path(out_dir) / "fig2e-profile.svg").string(), {s1, s2},
                        {"fig2e: averaged intensity profile", "cell index", "Ibar_n / I_in",
                         false, true});
    }

    // fig3a: spectrum of the saturated-defect chain; fig3b: defect bundle.
    {
        auto cfg = suite_config("fig3a", 0.0, root7_half, 1e3);
        cfg.outputs = {"spectrum", "defect"};
        run_experiment(cfg, options);

        const auto sol = analytic_defect(std::sqrt(2.0), 1.0, root7_half, 0.0);
        const auto [plus, minus] = analytic_defect_states(sol, 100);
        const auto model = build_linear_model(std::sqrt(2.0), 1.0, effective_profile(cfg));
        CsvWriter csv({"j", "psi_plus", "psi_minus", "s_psi_plus", "s_psi_minus"});
        for (std::size_t j = 0; j < plus.size(); ++j)
            csv.add_row({CsvWriter::field(static_cast<int>(j + 1)),
                         CsvWriter::field(plus[j].real()), CsvWriter::field(minus[j].real()),
                         CsvWriter::field(model.s_diag[j] * plus[j].real()),
                         CsvWriter::field(model.s_diag[j] * minus[j].real())});
        csv.write_file((fs::path(out_dir) / "fig3b-states.csv").string());
    }

    // fig3c: time evolution of the static chain, below / above threshold.
    for (const auto& [name, g1] : {std::pair<std::string, double>{"fig3c-below", 0.5},
                                   std::pair<std::string, double>{"fig3c-above", root7_half}}) {
        std::vector<double> prof(100, 0.0);
        prof[0] = g1;
        State psi0(200, Complex(0.0, 0.0));
        psi0[0] = std::sqrt(1e3);
        const auto traj = integrate_frozen(std::sqrt(2.0), 1.0, prof, psi0, 100.0, 1e-3, 50);
        std::vector<std::string> header = {"t"};
        for (int c = 1; c <= traj.n_cells(); ++c) header.push_back("I_" + std::to_string(c));
        CsvWriter csv(header);
        for (std::size_t k = 0; k < traj.n_samples(); ++k) {
            std::vector<std::string> row = {CsvWriter::field(traj.times[k])};
            for (double v : cell_intensities(traj.states[k])) row.push_back(CsvWriter::field(v));
            csv.add_row(row);
        }
        csv.write_file((fs::path(out_dir) / (name + ".csv")).string());
        std::vector<Series> series;
        for (int c = 0; c < 3; ++c) {
            Series s{"I_" + std::to_string(c + 1), {}, {}};
            for (std::size_t k = 0; k < traj.n_samples(); ++k) {
                s.x.push_back(traj.times[k]);
                const auto& st = traj.states[k];
                s.y.push_back(std::norm(st[2 * static_cast<std::size_t>(c)]) +
                              std::norm(st[2 * static_cast<std::size_t>(c) + 1]));
            }
            series.push_back(std::move(s));
        }
        write_line_plot((fs::path(out_dir) / (name + ".svg")).string(), series,
                        {name + ": static-chain evolution", "t (1/nu)", "I_n", false, false});
    }

    // fig3d: breather period vs gamma_bar_2 against the static-chain value.
    {
        auto cfg = suite_config("fig3d", 0.0, root7_half, 1e3);
        cfg.t_final = 150.0;
        cfg.sweep = SweepSpec{"i_in", 200.0, 1e4, 21, true};
        const auto points = run_sweep(cfg, workers);
        CsvWriter csv({"i_in", "gamma_bar_2", "period", "period_linear"});
        Series sim{"simulated", {}, {}}, lin{"static chain", {}, {}};
        for (const auto& p : points) {
            csv.add_row({CsvWriter::field(p.value), CsvWriter::field(p.gamma_bar_2),
                         CsvWriter::field(p.period), CsvWriter::field(p.period_linear)});
            if (p.period) {
                sim.x.push_back(p.gamma_bar_2);
                sim.y.push_back(*p.period);
            }
            if (p.period_linear) {
                lin.x.push_back(p.gamma_bar_2);
                lin.y.push_back(*p.period_linear);
            }
        }
        csv.write_file((fs::path(out_dir) / "fig3d-period.csv").string());
        write_line_plot((fs::path(out_dir) / "fig3d-period.svg").string(), {sim, lin},
                        {"fig3d: breather period vs gamma_bar_2", "gamma_bar_2 / nu",
                         "period (1/nu)", false, false});
    }

    // figs2a: overlaps of the initial state with the chain eigenstates.
    {
        std::vector<double> prof(100, 0.0);
        prof[0] = root7_half;
        const auto model = build_linear_model(std::sqrt(2.0), 1.0, prof);
        const auto spectral = eigensolve(model);
        CsvWriter csv({"index", "energy", "overlap"});
        for (std::size_t k = 0; k < spectral.eigenvalues.size(); ++k)
            csv.add_row({CsvWriter::field(static_cast<int>(k + 1)),
                         CsvWriter::field(spectral.eigenvalues[k]),
                         CsvWriter::field(spectral.vectors_h(0, k))});
        csv.write_file((fs::path(out_dir) / "figs2a-overlaps.csv").string());
    }

    // figs2b/c: weight of the end-state pair across the thresholds.
    {
        CsvWriter csv_b({"gamma_0", "w"});
        Series sb{"w(gamma_0)", {}, {}};
        const auto ref = analytic_defect(std::sqrt(2.0), 1.0, root7_half, 0.0);
        for (int i = 0; i < 40; ++i) {
            const double g0 = ref.gamma_0c * static_cast<double>(i) / 40.0;
            const auto sol = analytic_defect(std::sqrt(2.0), 1.0, root7_half, g0);
            if (!sol.localized) continue;
            csv_b.add_row({CsvWriter::field(g0), CsvWriter::field(sol.weight)});
            sb.x.push_back(g0);
            sb.y.push_back(sol.weight);
        }
        csv_b.write_file((fs::path(out_dir) / "figs2b-weight.csv").string());

        CsvWriter csv_c({"gamma_s", "w"});
        Series sc{"w(gamma_s)", {}, {}};
        const double gsc = ref.gamma_sc, kappa = std::sqrt(2.0);
        for (int i = 1; i <= 40; ++i) {
            const double gs = gsc + (kappa - 1e-6 - gsc) * static_cast<double>(i) / 40.0;
            const auto sol = analytic_defect(kappa, 1.0, gs, 0.0);
            if (!sol.localized) continue;
            csv_c.add_row({CsvWriter::field(gs), CsvWriter::field(sol.weight)});
            sc.x.push_back(gs);
            sc.y.push_back(sol.weight);
        }
        csv_c.write_file((fs::path(out_dir) / "figs2c-weight.csv").string());
        write_line_plot((fs::path(out_dir) / "figs2bc-weight.svg").string(), {sb, sc},
                        {"figs2: end-state weight near the thresholds", "gamma / nu", "w",
                         false, false});
    }

    // figs3: reciprocal comparison chain and the two phase maps.
    {
        ExperimentConfig cfg;
        cfg.name = "figs3b";
        cfg.model = ModelKind::hermitian;
        cfg.params = {100, 2.0, 1.0, 0.0, root7_half, 1.0};
        cfg.i_in = 1e3;
        cfg.t_final = 100.0;
        cfg.dt = 1e-3;
        cfg.stride = 50;
        cfg.window_start = 50.0;
        cfg.window_end = 100.0;
        run_experiment(cfg, options);  // trajectory + averages + period + heatmap (= figs3c)

        auto sweep_cfg = cfg;
        sweep_cfg.name = "figs3a";
        sweep_cfg.sweep = SweepSpec{"i_in", 10.0, 1e4, 21, true};
        run_experiment(sweep_cfg, options);

        auto breather_cfg = suite_config("figs3d", 0.0, root7_half, 1e3);
        breather_cfg.outputs = {"heatmap"};
        run_experiment(breather_cfg, options);
    }

    // Ladder-picture consistency at the breather configuration.
    {
        LatticeParams p{100, std::sqrt(2.0), 1.0, 0.0, root7_half, 1.0};
        State psi0(200, Complex(0.0, 0.0));
        psi0[0] = std::sqrt(1e3);
        const double dev = equivalence_check(p, psi0, 100.0, 1e-3);
        CsvWriter csv({"t_final", "dt", "max_relative_deviation"});
        csv.add_row({CsvWriter::field(100.0), CsvWriter::field(1e-3), CsvWriter::field(dev)});
        csv.write_file((fs::path(out_dir) / "ladder-equivalence.csv").string());
    }
}

}  // namespace breather
