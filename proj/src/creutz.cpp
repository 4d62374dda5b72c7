#include "breather/creutz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "breather/evolve.hpp"

namespace breather {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI(0.0, 1.0);
}  // namespace

std::vector<double> CreutzState::cell_intensities() const {
    std::vector<double> intensities(phi_c.size());
    for (std::size_t n = 0; n < phi_c.size(); ++n)
        intensities[n] = std::norm(phi_c[n]) + std::norm(phi_d[n]);
    return intensities;
}

CreutzState to_creutz(const State& psi) {
    if (psi.size() % 2 != 0)
        throw std::invalid_argument("to_creutz: state length must be even");
    const std::size_t n = psi.size() / 2;
    CreutzState cs;
    cs.phi_c.resize(n);
    cs.phi_d.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
        cs.phi_c[c] = kInvSqrt2 * (psi[2 * c] - kI * psi[2 * c + 1]);
        cs.phi_d[c] = kInvSqrt2 * (-kI * psi[2 * c] + psi[2 * c + 1]);
    }
    return cs;
}

State from_creutz(const CreutzState& cs) {
    const std::size_t n = cs.phi_c.size();
    if (cs.phi_d.size() != n)
        throw std::invalid_argument("from_creutz: chain length mismatch");
    State psi(2 * n);
    for (std::size_t c = 0; c < n; ++c) {
        psi[2 * c] = kInvSqrt2 * (cs.phi_c[c] + kI * cs.phi_d[c]);
        psi[2 * c + 1] = kInvSqrt2 * (kI * cs.phi_c[c] + cs.phi_d[c]);
    }
    return psi;
}

CreutzState apply_creutz_frozen(double kappa, double nu, std::span<const double> gamma,
                                const CreutzState& cs) {
    const std::size_t n = gamma.size();
    if (cs.phi_c.size() != n || cs.phi_d.size() != n)
        throw std::invalid_argument("apply_creutz_frozen: chain length mismatch");
    CreutzState out;
    out.phi_c.resize(n);
    out.phi_d.resize(n);
    const double half_nu = 0.5 * nu;
    for (std::size_t c = 0; c < n; ++c) {
        Complex oc = kI * gamma[c] * cs.phi_c[c] + kappa * cs.phi_d[c];
        Complex od = -kI * gamma[c] * cs.phi_d[c] + kappa * cs.phi_c[c];
        if (c > 0) {
            oc += half_nu * (kI * cs.phi_c[c - 1] + cs.phi_d[c - 1]);
            od += half_nu * (-kI * cs.phi_d[c - 1] + cs.phi_c[c - 1]);
        }
        if (c + 1 < n) {
            oc += half_nu * (-kI * cs.phi_c[c + 1] + cs.phi_d[c + 1]);
            od += half_nu * (kI * cs.phi_d[c + 1] + cs.phi_c[c + 1]);
        }
        out.phi_c[c] = oc;
        out.phi_d[c] = od;
    }
    return out;
}

CreutzState apply_creutz_hamiltonian(const LatticeParams& params, const CreutzState& cs) {
    if (cs.n_cells() != params.n_cells)
        throw std::invalid_argument("apply_creutz_hamiltonian: cell count mismatch");
    const auto intensities = cs.cell_intensities();
    std::vector<double> gamma(intensities.size());
    for (std::size_t c = 0; c < gamma.size(); ++c)
        gamma[c] = gamma_of_intensity(params, intensities[c]);
    return apply_creutz_frozen(params.kappa, params.nu, gamma, cs);
}

double equivalence_check(const LatticeParams& params, const State& initial, double t_final,
                         double dt) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(params.n_cells);
    const int stride = std::max(1, static_cast<int>(std::llround(t_final / dt)) / 2000);

    Trajectory lattice = integrate(params, initial, t_final, dt, stride);

    // Ladder picture integrated in the interleaved layout [c0, d0, c1, d1, ...]
    // with the identical RK4 scheme, so any disagreement is mapping error.
    const auto cs0 = to_creutz(initial);
    State phi0(2 * n);
    for (std::size_t c = 0; c < n; ++c) {
        phi0[2 * c] = cs0.phi_c[c];
        phi0[2 * c + 1] = cs0.phi_d[c];
    }
    const double kappa = params.kappa, half_nu = 0.5 * params.nu;
    std::vector<double> gamma(n);
    auto apply = [&](const State& y, State& out) {
        for (std::size_t c = 0; c < n; ++c) {
            const double intensity = std::norm(y[2 * c]) + std::norm(y[2 * c + 1]);
            const double x = intensity / params.i_sat;
            gamma[c] = (params.gamma0 + params.gammas * x) / (1.0 + x);
        }
        for (std::size_t c = 0; c < n; ++c) {
            Complex oc = kI * gamma[c] * y[2 * c] + kappa * y[2 * c + 1];
            Complex od = -kI * gamma[c] * y[2 * c + 1] + kappa * y[2 * c];
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
    };
    Trajectory ladder = integrate_rk4(apply, phi0, t_final, dt, stride);

    double i_total0 = 0.0;
    for (const auto& a : initial) i_total0 += std::norm(a);
    const double scale = std::max(i_total0, 1e-300);

    double worst = 0.0;
    for (std::size_t k = 0; k < lattice.n_samples(); ++k) {
        const auto& sl = lattice.states[k];
        const auto& sc = ladder.states[k];
        for (std::size_t c = 0; c < n; ++c) {
            const double il = std::norm(sl[2 * c]) + std::norm(sl[2 * c + 1]);
            const double ic = std::norm(sc[2 * c]) + std::norm(sc[2 * c + 1]);
            worst = std::max(worst, std::abs(il - ic) / scale);
        }
    }
    return worst;
}

}  // namespace breather
