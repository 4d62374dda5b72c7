#include "breather/hermitian_ssh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace breather {

State apply_reciprocal_frozen(double kappa, double nu, std::span<const double> gamma,
                              const State& psi) {
    const std::size_t n = gamma.size();
    if (psi.size() != 2 * n)
        throw std::invalid_argument("apply_reciprocal_frozen: state length mismatch");
    State out(psi.size());
    for (std::size_t c = 0; c < n; ++c) {
        const double hop = kappa - gamma[c];
        Complex odd = hop * psi[2 * c + 1];
        if (c > 0) odd += nu * psi[2 * c - 1];
        Complex even = hop * psi[2 * c];
        if (c + 1 < n) even += nu * psi[2 * c + 2];
        out[2 * c] = odd;
        out[2 * c + 1] = even;
    }
    return out;
}

State apply_reciprocal_hamiltonian(const LatticeParams& params, const State& psi) {
    if (static_cast<int>(psi.size()) != params.n_sites())
        throw std::invalid_argument("apply_reciprocal_hamiltonian: state length mismatch");
    const auto gamma = gamma_profile_of(params, psi);
    return apply_reciprocal_frozen(params.kappa, params.nu, gamma, psi);
}

Trajectory integrate_reciprocal(const LatticeParams& params, const State& initial,
                                double t_final, double dt, int stride) {
    params.validate();
    if (static_cast<int>(initial.size()) != params.n_sites())
        throw std::invalid_argument("integrate_reciprocal: initial state length mismatch");
    const std::size_t n = static_cast<std::size_t>(params.n_cells);
    std::vector<double> gamma(n);
    return integrate_rk4(
        [&params, &gamma, n](const State& y, State& out) {
            for (std::size_t c = 0; c < n; ++c) {
                const double intensity = std::norm(y[2 * c]) + std::norm(y[2 * c + 1]);
                const double x = intensity / params.i_sat;
                gamma[c] = (params.gamma0 + params.gammas * x) / (1.0 + x);
            }
            for (std::size_t c = 0; c < n; ++c) {
                const double hop = params.kappa - gamma[c];
                Complex odd = hop * y[2 * c + 1];
                if (c > 0) odd += params.nu * y[2 * c - 1];
                Complex even = hop * y[2 * c];
                if (c + 1 < n) even += params.nu * y[2 * c + 2];
                out[2 * c] = odd;
                out[2 * c + 1] = even;
            }
        },
        initial, t_final, dt, stride);
}

double reciprocal_gamma_crit(const LatticeParams& params) { return params.kappa - params.nu; }

double plateau_metric(const Trajectory& traj, double t_eval) {
    if (traj.n_samples() == 0) throw std::domain_error("plateau_metric: empty trajectory");
    if (t_eval < traj.times.front() - 1e-12 || t_eval > traj.times.back() + 1e-12)
        throw std::domain_error("plateau_metric: t_eval outside trajectory range");
    if (traj.n_cells() < 11)
        throw std::domain_error("plateau_metric: needs at least 11 cells");

    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.n_samples(); ++k) {
        const double d = std::abs(traj.times[k] - t_eval);
        if (d < best) {
            best = d;
            nearest = k;
        }
    }
    const auto intensities = cell_intensities(traj.states[nearest]);

    std::vector<double> ratios;
    for (int c = 1; c <= 9; ++c) {  // 1-based cells 2..10
        const double lo = intensities[static_cast<std::size_t>(c)];
        const double hi = intensities[static_cast<std::size_t>(c) + 1];
        if (lo > 0.0)
            ratios.push_back(hi / lo);
        else
            ratios.push_back(0.0);
    }
    std::sort(ratios.begin(), ratios.end());
    return ratios[ratios.size() / 2];
}

}  // namespace breather
