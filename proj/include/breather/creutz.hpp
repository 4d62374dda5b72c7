#pragma once

#include <span>
#include <vector>

#include "breather/lattice.hpp"

namespace breather {

/// Two-leg ladder amplitudes: phi_c on the gain chain, phi_d on the loss chain.
struct CreutzState {
    std::vector<Complex> phi_c;
    std::vector<Complex> phi_d;

    int n_cells() const { return static_cast<int>(phi_c.size()); }
    /// |phi_c_n|^2 + |phi_d_n|^2, equal to the SSH cell intensity under the mapping.
    std::vector<double> cell_intensities() const;
};

/// Per-cell basis rotation (phi_c, phi_d) = U (psi_{2n}, psi_{2n+1}) with
/// U = exp(-i sigma_x pi/4).
CreutzState to_creutz(const State& psi);

/// Inverse rotation: psi_{2n} = (phi_c + i phi_d)/sqrt2, psi_{2n+1} = (i phi_c + phi_d)/sqrt2.
State from_creutz(const CreutzState& cs);

/// Ladder Hamiltonian action with a fixed gamma profile: on-site +-i gamma_n,
/// rung coupling kappa, nearest/next-nearest inter-cell hoppings +-i nu/2 and nu/2.
CreutzState apply_creutz_frozen(double kappa, double nu, std::span<const double> gamma,
                                const CreutzState& cs);

/// Nonlinear action: gamma_n from the instantaneous ladder cell intensities.
CreutzState apply_creutz_hamiltonian(const LatticeParams& params, const CreutzState& cs);

/// Evolves `initial` under the lattice Hamiltonian and its unitary ladder
/// image under the transformed Hamiltonian with the same RK4 scheme and dt.
/// Returns the max over samples and cells of |I_n^lattice - I_n^ladder|
/// normalized by the initial total intensity.
double equivalence_check(const LatticeParams& params, const State& initial, double t_final,
                         double dt);

}  // namespace breather
