#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "breather/lattice.hpp"

namespace breather {

/// Time-sampled evolution. First sample is the initial state at t = 0; the
/// final sample lands exactly on t_final.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    int sample_stride = 1;

    std::size_t n_samples() const { return times.size(); }
    int n_cells() const { return states.empty() ? 0 : static_cast<int>(states.front().size() / 2); }
};

/// Window averages of the trajectory observables.
struct AveragedObservables {
    std::vector<double> i_bar_cells;      // per-cell time-averaged intensity
    double i_bar_total = 0.0;             // sum over cells
    std::vector<double> gamma_bar_cells;  // per-cell time-averaged gamma_n(t)
    double t_start = 0.0;
    double t_end = 0.0;
};

/// Raised when the divergence guard trips: total intensity exceeded
/// 1e12 x the initial total. Carries the samples stored so far so callers
/// can keep partial outputs.
class BlowUpError : public std::runtime_error {
  public:
    BlowUpError(double t, Trajectory partial_traj);
    double time;
    Trajectory partial;
};

namespace detail {
inline void check_step_args(double t_final, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(t_final >= dt)) throw std::invalid_argument("integrate: t_final must be >= dt");
}
inline double total_intensity(const State& psi) {
    double s = 0.0;
    for (const auto& a : psi) s += std::norm(a);
    return s;
}
}  // namespace detail

/// Classical fixed-step RK4 on d psi/dt = -i H(psi) psi. `apply` must fill its
/// second argument with H(y) y; it is invoked on every stage state, so any
/// state-dependence of H is re-evaluated per stage. Samples are stored every
/// `stride` steps plus the initial and final states.
template <class ApplyH>
Trajectory integrate_rk4(ApplyH&& apply, const State& initial, double t_final, double dt,
                         int stride, double blowup_factor = 1e12) {
    detail::check_step_args(t_final, dt);
    if (stride < 1) throw std::invalid_argument("integrate: stride must be >= 1");

    const long n_steps = std::max<long>(1, static_cast<long>(std::ceil(t_final / dt - 1e-12)));
    const double i_total0 = detail::total_intensity(initial);

    Trajectory traj;
    traj.sample_stride = stride;
    traj.times.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
    traj.states.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
    traj.times.push_back(0.0);
    traj.states.push_back(initial);

    const std::size_t m = initial.size();
    State y = initial, k1(m), k2(m), k3(m), k4(m), stage(m);
    const Complex mi(0.0, -1.0);  // -i

    for (long step = 1; step <= n_steps; ++step) {
        const double h = (step < n_steps) ? dt : t_final - dt * static_cast<double>(n_steps - 1);
        apply(y, k1);
        for (std::size_t j = 0; j < m; ++j) stage[j] = y[j] + (0.5 * h) * (mi * k1[j]);
        apply(stage, k2);
        for (std::size_t j = 0; j < m; ++j) stage[j] = y[j] + (0.5 * h) * (mi * k2[j]);
        apply(stage, k3);
        for (std::size_t j = 0; j < m; ++j) stage[j] = y[j] + h * (mi * k3[j]);
        apply(stage, k4);
        for (std::size_t j = 0; j < m; ++j)
            y[j] += (h / 6.0) * (mi * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));

        const double t = (step < n_steps) ? dt * static_cast<double>(step) : t_final;
        if (i_total0 > 0.0 && detail::total_intensity(y) > blowup_factor * i_total0)
            throw BlowUpError(t, std::move(traj));
        if (step % stride == 0 || step == n_steps) {
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
    }
    return traj;
}

/// Nonlinear nonreciprocal evolution from `initial`.
Trajectory integrate(const LatticeParams& params, const State& initial, double t_final,
                     double dt, int stride);

/// Evolution under the static linear model with per-cell profile `gamma`.
Trajectory integrate_frozen(double kappa, double nu, const std::vector<double>& gamma,
                            const State& initial, double t_final, double dt, int stride);

/// Trapezoidal time averages of I_n(t) and gamma_n(t) over [t_start, t_end].
/// The window must contain at least two stored samples.
AveragedObservables averaged_observables(const Trajectory& traj, const LatticeParams& params,
                                         double t_start, double t_end);

/// Times of the local maxima of I_cell(t) for t > t_transient whose prominence
/// (height above the higher of the two bounding valleys) reaches 1% of the
/// windowed max-min. cell_index is 0-based.
std::vector<double> detect_peaks(const Trajectory& traj, int cell_index, double t_transient);

/// Mean spacing of the detected peaks. Returns nullopt when fewer than 3 peaks
/// survive or the spacing RSD exceeds 20% (aperiodic).
std::optional<double> extract_period(const Trajectory& traj, int cell_index, double t_transient);

/// Theta(gamma_n(t) - gamma_crit) per (sample, cell); Theta(0) = 0.
std::vector<std::vector<std::uint8_t>> phase_heatmap(const Trajectory& traj,
                                                     const LatticeParams& params,
                                                     double gamma_crit);

}  // namespace breather
