#pragma once

#include <utility>
#include <vector>

#include "breather/dense.hpp"
#include "breather/lattice.hpp"

namespace breather {

/// Static linear chain H_l with per-cell gamma profile, its Hermitian image
/// H_h = S^-1 H_l S, and the diagonal similarity transform S.
///
/// H_h is tridiagonal in the site basis with zero diagonal and off-diagonals
/// alternating [kappa_1, nu, kappa_2, nu, ...], kappa_n = sqrt(kappa^2 - gamma_n^2).
struct LinearModel {
    int n_cells = 0;
    double kappa = 0.0, nu = 0.0;
    std::vector<double> gamma;    // N per-cell values, each in [0, kappa)
    std::vector<double> beta;     // beta_n = sqrt((kappa - gamma_n)/(kappa + gamma_n))
    std::vector<double> s_diag;   // 2N diagonal of S: [1, b1, b1, b1 b2, b1 b2, ...]
    std::vector<double> offdiag;  // 2N-1 off-diagonal of H_h
    Matrix h_l, h_h;              // dense 2N x 2N copies

    int n_sites() const { return 2 * n_cells; }
    /// Band-gap edge |kappa_tail - nu| of the asymptotic (last-cell) bulk.
    double gap_edge() const;
};

/// Assembles the model. Throws if any gamma_n is outside [0, kappa) (S singular).
LinearModel build_linear_model(double kappa, double nu, const std::vector<double>& profile);

/// Full spectrum of H_h (equivalently H_l) with eigenvectors.
struct SpectralResult {
    std::vector<double> eigenvalues;     // ascending
    Matrix vectors_h;                    // columns: orthonormal eigenvectors of H_h
    Matrix vectors_l;                    // columns: S v, unit-normalized, largest entry > 0
    std::vector<std::size_t> in_gap;     // indices with |E| < gap_edge - 1e-6 nu
};

/// Implicit-shift QL iteration on the symmetric tridiagonal H_h, eigenvectors
/// accumulated. Throws std::runtime_error after 30 sweeps without deflation.
SpectralResult eigensolve(const LinearModel& model);

/// Eigenvalues only (ascending); cheaper for sweeps.
std::vector<double> eigensolve_values(const LinearModel& model);

/// Closed-form end-defect bundle for the profile gamma_1 = gamma_d,
/// gamma_{n>=2} = gamma_0. Lengths in units of nu are rescaled internally.
///
/// Derivation notes: the boundary recursion fixes a = -kappa_d/(kappa_0^2-kappa_d^2)
/// (in nu = 1 units) and a cell-to-cell decay factor -1/r, r = kappa_0 - kappa_d^2/kappa_0;
/// the end state exists (is normalizable) iff r > 1.
struct DefectSolution {
    double kappa = 0.0, nu = 0.0, gamma_d = 0.0, gamma_0 = 0.0;
    double kappa_d = 0.0, kappa_0 = 0.0;
    double a = 0.0, b = 0.0, r = 0.0;  // dimensionless internal parameters
    double norm_sq = 0.0;              // N^2 normalization of the end-state pair
    double e_d = 0.0;                  // defect energy >= 0
    double gamma_sc = 0.0, gamma_0c = 0.0;  // thresholds (NaN when undefined)
    double kappa_sc = 0.0, kappa_0c = 0.0;
    double weight = 0.0;               // w = 2 / N^2
    double period = 0.0;               // T_d = pi / E_d
    bool bound = false;                // b real: kappa_0^2 - kappa_d^2 > nu^2
    bool localized = false;            // r > 1
};

DefectSolution analytic_defect(double kappa, double nu, double gamma_d, double gamma_0);

/// The chirality-paired end states Psi_d^+ / Psi_d^- of H_h truncated to
/// n_cells cells, normalized by the closed-form N. Requires r > 1.
std::pair<State, State> analytic_defect_states(const DefectSolution& sol, int n_cells);

/// Two-level evolution S (c+ e^{-i E_d t} Psi+ + c- e^{+i E_d t} Psi-) with
/// c_+- = +-1/N, for the initial state (1, 0, 0, ...).
State rabi_evolution(const DefectSolution& sol, const LinearModel& model, double t);

}  // namespace breather
