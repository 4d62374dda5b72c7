#pragma once

#include <span>

#include "breather/evolve.hpp"
#include "breather/lattice.hpp"

namespace breather {

/// Reciprocal comparison chain: both intracell hoppings are kappa - gamma_n,
/// so the frozen-profile matrix is symmetric. Critical value here is
/// gamma_c = kappa - nu (not the nonreciprocal sqrt(kappa^2 - nu^2)).
State apply_reciprocal_frozen(double kappa, double nu, std::span<const double> gamma,
                              const State& psi);

/// Nonlinear action with gamma_n from the instantaneous intensities.
State apply_reciprocal_hamiltonian(const LatticeParams& params, const State& psi);

/// Nonlinear evolution under the reciprocal chain.
Trajectory integrate_reciprocal(const LatticeParams& params, const State& initial,
                                double t_final, double dt, int stride);

double reciprocal_gamma_crit(const LatticeParams& params);

/// Median of I_{n+1}/I_n over cells n = 2..10 (1-based) at the sample nearest
/// t_eval. Near 1 for a plateau tail, small for exponential localization;
/// an all-zero tail returns 0.
double plateau_metric(const Trajectory& traj, double t_eval);

}  // namespace breather
