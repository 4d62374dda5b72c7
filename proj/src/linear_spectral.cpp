#include "breather/linear_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace breather {

namespace {
constexpr double kGapMargin = 1e-6;
constexpr int kMaxQlSweeps = 30;

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on a symmetric tridiagonal matrix (d = diagonal,
// e = off-diagonal, e[n-1] unused). If z is non-null its columns accumulate
// the eigenvectors (pass identity to get eigenvectors of the tridiagonal).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxQlSweeps)
                    throw std::runtime_error(
                        "eigensolve: QL iteration failed to converge after " +
                        std::to_string(kMaxQlSweeps) + " sweeps (eigenvalue " +
                        std::to_string(l) + " of " + std::to_string(n) + ")");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z != nullptr) {
                        for (int k = 0; k < n; ++k) {
                            f = (*z)(static_cast<std::size_t>(k), static_cast<std::size_t>(i + 1));
                            (*z)(static_cast<std::size_t>(k), static_cast<std::size_t>(i + 1)) =
                                s * (*z)(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) +
                                c * f;
                            (*z)(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
                                c * (*z)(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) -
                                s * f;
                        }
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_pairs(std::vector<double>& d, Matrix* z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (std::size_t i = 0; i < n; ++i) ds[i] = d[order[i]];
    d = std::move(ds);
    if (z != nullptr) {
        Matrix zs(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) zs(i, j) = (*z)(i, order[j]);
        *z = std::move(zs);
    }
}

void fix_column_sign(Matrix& m, std::size_t col) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double a = std::abs(m(i, col));
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (m(arg, col) < 0.0)
        for (std::size_t i = 0; i < m.rows; ++i) m(i, col) = -m(i, col);
}

}  // namespace

double LinearModel::gap_edge() const {
    const double gamma_tail = gamma.back();
    const double kappa_tail = std::sqrt(kappa * kappa - gamma_tail * gamma_tail);
    return std::abs(kappa_tail - nu);
}

LinearModel build_linear_model(double kappa, double nu, const std::vector<double>& profile) {
    if (profile.empty()) throw std::invalid_argument("build_linear_model: empty profile");
    if (!(kappa > 0.0) || !(nu > 0.0))
        throw std::invalid_argument("build_linear_model: kappa and nu must be > 0");
    for (std::size_t c = 0; c < profile.size(); ++c)
        if (!(profile[c] >= 0.0 && profile[c] < kappa))
            throw std::invalid_argument(
                "build_linear_model: gamma_" + std::to_string(c + 1) +
                " outside [0, kappa) makes the similarity transform singular");

    LinearModel m;
    m.n_cells = static_cast<int>(profile.size());
    m.kappa = kappa;
    m.nu = nu;
    m.gamma = profile;

    const int n = m.n_sites();
    m.beta.resize(profile.size());
    for (std::size_t c = 0; c < profile.size(); ++c)
        m.beta[c] = std::sqrt((kappa - profile[c]) / (kappa + profile[c]));

    m.s_diag.assign(n, 1.0);
    for (std::size_t c = 0; c < profile.size(); ++c) {
        m.s_diag[2 * c + 1] = m.s_diag[2 * c] * m.beta[c];
        if (2 * c + 2 < static_cast<std::size_t>(n)) m.s_diag[2 * c + 2] = m.s_diag[2 * c + 1];
    }

    m.offdiag.assign(n - 1, 0.0);
    for (std::size_t c = 0; c < profile.size(); ++c) {
        m.offdiag[2 * c] = std::sqrt(kappa * kappa - profile[c] * profile[c]);
        if (2 * c + 1 < static_cast<std::size_t>(n - 1)) m.offdiag[2 * c + 1] = nu;
    }

    m.h_l = Matrix(n, n);
    m.h_h = Matrix(n, n);
    for (std::size_t c = 0; c < profile.size(); ++c) {
        m.h_l(2 * c, 2 * c + 1) = kappa + profile[c];
        m.h_l(2 * c + 1, 2 * c) = kappa - profile[c];
        m.h_h(2 * c, 2 * c + 1) = m.offdiag[2 * c];
        m.h_h(2 * c + 1, 2 * c) = m.offdiag[2 * c];
        if (2 * c + 2 < static_cast<std::size_t>(n)) {
            m.h_l(2 * c + 1, 2 * c + 2) = nu;
            m.h_l(2 * c + 2, 2 * c + 1) = nu;
            m.h_h(2 * c + 1, 2 * c + 2) = nu;
            m.h_h(2 * c + 2, 2 * c + 1) = nu;
        }
    }
    return m;
}

SpectralResult eigensolve(const LinearModel& model) {
    const std::size_t n = static_cast<std::size_t>(model.n_sites());
    std::vector<double> d(n, 0.0);
    std::vector<double> e = model.offdiag;
    Matrix z = Matrix::identity(n);
    tridiagonal_ql(d, e, &z);
    sort_pairs(d, &z);

    SpectralResult res;
    res.eigenvalues = std::move(d);
    for (std::size_t j = 0; j < n; ++j) fix_column_sign(z, j);

    res.vectors_l = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            res.vectors_l(i, j) = model.s_diag[i] * z(i, j);
            norm += res.vectors_l(i, j) * res.vectors_l(i, j);
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) res.vectors_l(i, j) /= norm;
        fix_column_sign(res.vectors_l, j);
    }
    res.vectors_h = std::move(z);

    const double edge = model.gap_edge() - kGapMargin * model.nu;
    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(res.eigenvalues[j]) < edge) res.in_gap.push_back(j);
    return res;
}

std::vector<double> eigensolve_values(const LinearModel& model) {
    std::vector<double> d(static_cast<std::size_t>(model.n_sites()), 0.0);
    std::vector<double> e = model.offdiag;
    tridiagonal_ql(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

DefectSolution analytic_defect(double kappa, double nu, double gamma_d, double gamma_0) {
    if (!(nu > 0.0)) throw std::invalid_argument("analytic_defect: nu must be > 0");
    if (!(gamma_0 >= 0.0 && gamma_0 < gamma_d && gamma_d < kappa))
        throw std::invalid_argument("analytic_defect: requires 0 <= gamma_0 < gamma_d < kappa");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    // Work in nu = 1 units, scale energies back at the end.
    const double k = kappa / nu, gd = gamma_d / nu, g0 = gamma_0 / nu;
    const double kd = std::sqrt(k * k - gd * gd);
    const double k0 = std::sqrt(k * k - g0 * g0);
    const double dsq = k0 * k0 - kd * kd;  // = gd^2 - g0^2

    DefectSolution sol;
    sol.kappa = kappa;
    sol.nu = nu;
    sol.gamma_d = gamma_d;
    sol.gamma_0 = gamma_0;
    sol.kappa_d = kd * nu;
    sol.kappa_0 = k0 * nu;
    sol.r = k0 - kd * kd / k0;
    sol.bound = dsq > 1.0;
    sol.localized = sol.bound && sol.r > 1.0;

    if (sol.bound) {
        sol.b = std::sqrt(1.0 - 1.0 / dsq);
        sol.a = -kd / dsq;
        sol.e_d = kd * sol.b * nu;
        sol.period = M_PI / sol.e_d;
        if (sol.localized) {
            sol.norm_sq = 1.0 + (sol.b * sol.b + sol.a * sol.a) / (1.0 - 1.0 / (sol.r * sol.r));
            sol.weight = 2.0 / sol.norm_sq;
        } else {
            sol.norm_sq = nan;
            sol.weight = nan;
        }
    } else {
        sol.a = nan;
        sol.b = nan;
        sol.e_d = nan;
        sol.period = nan;
        sol.norm_sq = nan;
        sol.weight = nan;
    }

    // Threshold for gamma_s at the given gamma_0 (always defined), and for
    // gamma_0 at the given saturated gamma_d (radicand can go negative).
    sol.gamma_sc = std::sqrt(g0 * g0 + k0) * nu;
    const double rad0 = gd * gd - 0.5 - std::sqrt(k * k - gd * gd + 0.25);
    sol.gamma_0c = rad0 >= 0.0 ? std::sqrt(rad0) * nu : nan;
    const double rads = k0 * k0 - k0;
    sol.kappa_sc = rads >= 0.0 ? std::sqrt(rads) * nu : nan;
    sol.kappa_0c = (0.5 + std::sqrt(kd * kd + 0.25)) * nu;
    return sol;
}

std::pair<State, State> analytic_defect_states(const DefectSolution& sol, int n_cells) {
    if (!sol.localized)
        throw std::domain_error("analytic_defect_states: state is not localized (r <= 1)");
    if (n_cells < 1) throw std::invalid_argument("analytic_defect_states: n_cells must be >= 1");

    const double t = -1.0 / sol.r;  // cell-to-cell decay factor, alternating sign
    const double inv_norm = 1.0 / std::sqrt(sol.norm_sq);
    State plus(static_cast<std::size_t>(2 * n_cells));
    plus[0] = inv_norm;
    plus[1] = sol.b * inv_norm;
    double tail = 1.0;
    for (int c = 1; c < n_cells; ++c) {
        plus[2 * static_cast<std::size_t>(c)] = sol.a * tail * inv_norm;
        tail *= t;
        plus[2 * static_cast<std::size_t>(c) + 1] = sol.b * tail * inv_norm;
    }
    State minus = chiral_apply(plus);
    return {std::move(plus), std::move(minus)};
}

State rabi_evolution(const DefectSolution& sol, const LinearModel& model, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("rabi_evolution: t must be >= 0");
    auto [plus, minus] = analytic_defect_states(sol, model.n_cells);
    const double inv_norm = 1.0 / std::sqrt(sol.norm_sq);  // c_+ = -c_- = 1/N
    const Complex phase_p = std::exp(Complex(0.0, -sol.e_d * t)) * inv_norm;
    const Complex phase_m = -std::exp(Complex(0.0, sol.e_d * t)) * inv_norm;
    State psi(plus.size());
    for (std::size_t j = 0; j < psi.size(); ++j)
        psi[j] = model.s_diag[j] * (phase_p * plus[j] + phase_m * minus[j]);
    return psi;
}

}  // namespace breather
