#pragma once

#include <complex>
#include <span>
#include <vector>

namespace breather {

using Complex = std::complex<double>;

/// 2N site amplitudes, cell n (0-based) occupying indices 2n, 2n+1.
using State = std::vector<Complex>;

/// Physical constants of one lattice instance. Energies in absolute units;
/// nu is the energy/time unit used for reporting.
struct LatticeParams {
    int n_cells = 0;
    double kappa = 0.0;   // intracell base hopping
    double nu = 0.0;      // intercell hopping, sets the unit system
    double gamma0 = 0.0;  // nonreciprocity in the zero-intensity limit
    double gammas = 0.0;  // nonreciprocity at saturation
    double i_sat = 1.0;   // saturation intensity scale

    int n_sites() const { return 2 * n_cells; }

    /// Critical nonreciprocity of the finite open chain.
    double gamma_crit() const;

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

/// Saturable hopping law: gamma_s - (gamma_s - gamma_0) / (1 + I/I_s).
/// Monotone in I, bounded by [gamma_0, gamma_s]. Negative I throws.
double gamma_of_intensity(const LatticeParams& params, double intensity);

/// I_n = |psi_{2n}|^2 + |psi_{2n+1}|^2 per cell.
std::vector<double> cell_intensities(const State& psi);

/// Instantaneous per-cell gamma_n computed from the state's intensities.
std::vector<double> gamma_profile_of(const LatticeParams& params, const State& psi);

/// H action with a fixed per-cell gamma profile (the linear stencil):
///   (H psi)_{2n}   = (kappa + gamma_n) psi_{2n+1} + nu psi_{2n-1}
///   (H psi)_{2n+1} = (kappa - gamma_n) psi_{2n}   + nu psi_{2n+2}
/// Open boundaries: out-of-range neighbors contribute zero.
State apply_hamiltonian_frozen(double kappa, double nu, std::span<const double> gamma,
                               const State& psi);

/// Nonlinear H action: gamma_n recomputed from psi's instantaneous I_n.
State apply_hamiltonian(const LatticeParams& params, const State& psi);

/// C = diag(-1, 1, -1, 1, ...): negates the first site of every cell.
State chiral_apply(const State& psi);

}  // namespace breather
