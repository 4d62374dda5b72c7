#include "breather/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace breather {

BlowUpError::BlowUpError(double t, Trajectory partial_traj)
    : std::runtime_error("integration diverged (intensity blow-up) at t = " + std::to_string(t)),
      time(t),
      partial(std::move(partial_traj)) {}

namespace {

// In-place nonlinear stencil shared by the integrator fronts. gamma is scratch.
void apply_nonreciprocal(const LatticeParams& p, std::vector<double>& gamma, const State& y,
                         State& out) {
    const std::size_t n = y.size() / 2;
    for (std::size_t c = 0; c < n; ++c) {
        const double intensity = std::norm(y[2 * c]) + std::norm(y[2 * c + 1]);
        const double x = intensity / p.i_sat;
        gamma[c] = (p.gamma0 + p.gammas * x) / (1.0 + x);
    }
    for (std::size_t c = 0; c < n; ++c) {
        Complex odd = (p.kappa + gamma[c]) * y[2 * c + 1];
        if (c > 0) odd += p.nu * y[2 * c - 1];
        Complex even = (p.kappa - gamma[c]) * y[2 * c];
        if (c + 1 < n) even += p.nu * y[2 * c + 2];
        out[2 * c] = odd;
        out[2 * c + 1] = even;
    }
}

}  // namespace

Trajectory integrate(const LatticeParams& params, const State& initial, double t_final,
                     double dt, int stride) {
    params.validate();
    if (static_cast<int>(initial.size()) != params.n_sites())
        throw std::invalid_argument("integrate: initial state length mismatch");
    for (const auto& amp : initial)
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
            throw std::invalid_argument("integrate: initial state has non-finite amplitudes");
    std::vector<double> gamma(params.n_cells);
    return integrate_rk4(
        [&params, &gamma](const State& y, State& out) {
            apply_nonreciprocal(params, gamma, y, out);
        },
        initial, t_final, dt, stride);
}

Trajectory integrate_frozen(double kappa, double nu, const std::vector<double>& gamma,
                            const State& initial, double t_final, double dt, int stride) {
    if (initial.size() != 2 * gamma.size())
        throw std::invalid_argument("integrate_frozen: initial state length mismatch");
    const std::size_t n = gamma.size();
    return integrate_rk4(
        [kappa, nu, &gamma, n](const State& y, State& out) {
            for (std::size_t c = 0; c < n; ++c) {
                Complex odd = (kappa + gamma[c]) * y[2 * c + 1];
                if (c > 0) odd += nu * y[2 * c - 1];
                Complex even = (kappa - gamma[c]) * y[2 * c];
                if (c + 1 < n) even += nu * y[2 * c + 2];
                out[2 * c] = odd;
                out[2 * c + 1] = even;
            }
        },
        initial, t_final, dt, stride);
}

AveragedObservables averaged_observables(const Trajectory& traj, const LatticeParams& params,
                                         double t_start, double t_end) {
    const auto& ts = traj.times;
    if (ts.empty() || t_start < ts.front() - 1e-12 || t_end > ts.back() + 1e-12)
        throw std::domain_error("averaged_observables: window outside trajectory range");

    std::size_t i0 = 0;
    while (i0 < ts.size() && ts[i0] < t_start - 1e-12) ++i0;
    std::size_t i1 = ts.size();
    while (i1 > 0 && ts[i1 - 1] > t_end + 1e-12) --i1;
    if (i1 < i0 + 2)
        throw std::domain_error("averaged_observables: empty averaging window");
    --i1;  // inclusive upper sample

    const int n = traj.n_cells();
    AveragedObservables avg;
    avg.t_start = ts[i0];
    avg.t_end = ts[i1];
    avg.i_bar_cells.assign(n, 0.0);
    avg.gamma_bar_cells.assign(n, 0.0);

    std::vector<double> i_prev = cell_intensities(traj.states[i0]);
    std::vector<double> g_prev(n);
    for (int c = 0; c < n; ++c) g_prev[c] = gamma_of_intensity(params, i_prev[c]);

    for (std::size_t k = i0 + 1; k <= i1; ++k) {
        const double h = ts[k] - ts[k - 1];
        std::vector<double> i_cur = cell_intensities(traj.states[k]);
        for (int c = 0; c < n; ++c) {
            const double g_cur = gamma_of_intensity(params, i_cur[c]);
            avg.i_bar_cells[c] += 0.5 * h * (i_prev[c] + i_cur[c]);
            avg.gamma_bar_cells[c] += 0.5 * h * (g_prev[c] + g_cur);
            i_prev[c] = i_cur[c];
            g_prev[c] = g_cur;
        }
    }
    const double span = avg.t_end - avg.t_start;
    for (int c = 0; c < n; ++c) {
        avg.i_bar_cells[c] /= span;
        avg.gamma_bar_cells[c] /= span;
        avg.i_bar_total += avg.i_bar_cells[c];
    }
    return avg;
}

std::vector<double> detect_peaks(const Trajectory& traj, int cell_index, double t_transient) {
    if (cell_index < 0 || cell_index >= traj.n_cells())
        throw std::domain_error("detect_peaks: cell index out of range");

    std::vector<double> tt, v;
    for (std::size_t k = 0; k < traj.n_samples(); ++k) {
        if (traj.times[k] > t_transient) {
            tt.push_back(traj.times[k]);
            const auto& s = traj.states[k];
            v.push_back(std::norm(s[2 * cell_index]) + std::norm(s[2 * cell_index + 1]));
        }
    }
    if (v.size() < 3) return {};

    const double vmax = *std::max_element(v.begin(), v.end());
    const double vmin = *std::min_element(v.begin(), v.end());
    if (!(vmax > vmin)) return {};

    std::vector<std::size_t> cand;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) cand.push_back(i);

    // Prominence above the higher of the two valleys bounding each candidate.
    auto seg_min = [&v](std::size_t lo, std::size_t hi) {
        return *std::min_element(v.begin() + static_cast<long>(lo),
                                 v.begin() + static_cast<long>(hi) + 1);
    };
    std::vector<double> peak_times;
    for (std::size_t j = 0; j < cand.size(); ++j) {
        const std::size_t left = (j == 0) ? 0 : cand[j - 1];
        const std::size_t right = (j + 1 == cand.size()) ? v.size() - 1 : cand[j + 1];
        const double prominence =
            v[cand[j]] - std::max(seg_min(left, cand[j]), seg_min(cand[j], right));
        if (prominence >= 0.01 * (vmax - vmin)) peak_times.push_back(tt[cand[j]]);
    }
    return peak_times;
}

std::optional<double> extract_period(const Trajectory& traj, int cell_index, double t_transient) {
    const auto peak_times = detect_peaks(traj, cell_index, t_transient);
    if (peak_times.size() < 3) return std::nullopt;

    std::vector<double> spacing(peak_times.size() - 1);
    for (std::size_t i = 0; i + 1 < peak_times.size(); ++i)
        spacing[i] = peak_times[i + 1] - peak_times[i];
    double mean = 0.0;
    for (double s : spacing) mean += s;
    mean /= static_cast<double>(spacing.size());
    double var = 0.0;
    for (double s : spacing) var += (s - mean) * (s - mean);
    var /= static_cast<double>(spacing.size());
    if (std::sqrt(var) > 0.20 * mean) return std::nullopt;
    return mean;
}

std::vector<std::vector<std::uint8_t>> phase_heatmap(const Trajectory& traj,
                                                     const LatticeParams& params,
                                                     double gamma_crit) {
    const int n = traj.n_cells();
    std::vector<std::vector<std::uint8_t>> map(traj.n_samples(), std::vector<std::uint8_t>(n));
    for (std::size_t k = 0; k < traj.n_samples(); ++k) {
        const auto intensities = cell_intensities(traj.states[k]);
        for (int c = 0; c < n; ++c)
            map[k][c] = gamma_of_intensity(params, intensities[c]) > gamma_crit ? 1 : 0;
    }
    return map;
}

}  // namespace breather
