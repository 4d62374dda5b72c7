#include "breather/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace breather {

double LatticeParams::gamma_crit() const {
    return std::sqrt(kappa * kappa - nu * nu);
}

void LatticeParams::validate() const {
    if (n_cells < 1)
        throw std::invalid_argument("LatticeParams: n_cells must be >= 1");
    if (!(nu > 0.0))
        throw std::invalid_argument("LatticeParams: nu must be > 0");
    if (!(kappa > nu))
        throw std::invalid_argument("LatticeParams: requires kappa > nu");
    if (!(gamma0 >= 0.0 && gamma0 <= gammas && gammas <= kappa))
        throw std::invalid_argument(
            "LatticeParams: requires 0 <= gamma0 <= gammas <= kappa");
    if (!(i_sat > 0.0))
        throw std::invalid_argument("LatticeParams: i_sat must be > 0");
}

double gamma_of_intensity(const LatticeParams& params, double intensity) {
    if (!(intensity >= 0.0))
        throw std::domain_error("gamma_of_intensity: intensity must be >= 0");
    // = gammas - (gammas - gamma0) / (1 + I/I_s), rearranged so the limits
    // I = 0 and I = I_s evaluate exactly
    const double x = intensity / params.i_sat;
    return (params.gamma0 + params.gammas * x) / (1.0 + x);
}

std::vector<double> cell_intensities(const State& psi) {
    if (psi.size() % 2 != 0)
        throw std::invalid_argument("cell_intensities: state length must be even");
    const std::size_t n = psi.size() / 2;
    std::vector<double> intensities(n);
    for (std::size_t c = 0; c < n; ++c)
        intensities[c] = std::norm(psi[2 * c]) + std::norm(psi[2 * c + 1]);
    return intensities;
}

std::vector<double> gamma_profile_of(const LatticeParams& params, const State& psi) {
    auto intensities = cell_intensities(psi);
    std::vector<double> gamma(intensities.size());
    for (std::size_t c = 0; c < gamma.size(); ++c)
        gamma[c] = gamma_of_intensity(params, intensities[c]);
    return gamma;
}

State apply_hamiltonian_frozen(double kappa, double nu, std::span<const double> gamma,
                               const State& psi) {
    const std::size_t n = gamma.size();
    if (psi.size() != 2 * n)
        throw std::invalid_argument("apply_hamiltonian_frozen: state length " +
                                    std::to_string(psi.size()) + " != 2 * " +
                                    std::to_string(n) + " cells");
    State out(psi.size());
    for (std::size_t c = 0; c < n; ++c) {
        Complex odd = (kappa + gamma[c]) * psi[2 * c + 1];
        if (c > 0) odd += nu * psi[2 * c - 1];
        Complex even = (kappa - gamma[c]) * psi[2 * c];
        if (c + 1 < n) even += nu * psi[2 * c + 2];
        out[2 * c] = odd;
        out[2 * c + 1] = even;
    }
    return out;
}

State apply_hamiltonian(const LatticeParams& params, const State& psi) {
    if (static_cast<int>(psi.size()) != params.n_sites())
        throw std::invalid_argument("apply_hamiltonian: state length mismatch");
    auto gamma = gamma_profile_of(params, psi);
    return apply_hamiltonian_frozen(params.kappa, params.nu, gamma, psi);
}

State chiral_apply(const State& psi) {
    State out(psi);
    for (std::size_t j = 0; j < out.size(); j += 2) out[j] = -out[j];
    return out;
}

}  // namespace breather
