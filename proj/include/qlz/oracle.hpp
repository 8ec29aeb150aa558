#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "qlz/dopri5.hpp"
#include "qlz/errors.hpp"
#include "qlz/joint_state.hpp"

// Brute-force validators, deliberately independent of the closed-form and
// rotating-frame solvers: direct adaptive integration of the per-sector
// two-level system, and dense lab-frame propagation of the truncated
// Hamiltonians with exactly unitary per-step propagators.

namespace qlz::oracle {

enum class DenseModel { rwa, full };

/// Truncated lab-frame Hamiltonian selector.
///   rwa:  H(tau) = -tau sigma_z + g (a† sigma_- + a sigma_+)   (tau = v^2 t)
///   full: H(tau) =  tau sigma_z + a†a + g (a + a†) sigma_x     (tau = u^2 t)
struct DenseHamiltonianSpec {
    DenseModel model = DenseModel::rwa;
    double g = 0.0;
    int n_max = 0;
};

/// Adaptive high-accuracy integration of the coupled pair equations
///   i c1' = -tau c1 + g_n c0,   i c0' = +tau c0 + g_n c1
/// with g_n = g sqrt(n+1). `initial` is (c1, c0) at tau0.
inline std::array<Complex, 2> ode_sector_oracle(double g, int n, double tau0, double tau1,
                                                std::array<Complex, 2> initial,
                                                double rel_tol = 1e-11, double abs_tol = 1e-13) {
    if (n < 0) throw DomainError("ode_sector_oracle: n must be >= 0");
    const double g_n = g * std::sqrt(static_cast<double>(n + 1));
    StateVec y = {initial[0], initial[1]};
    Dopri5Options opt;
    // local step tolerance sits well below the nominal accuracy target so the
    // accumulated global error stays under it over long windows
    opt.rel_tol = 0.02 * rel_tol;
    opt.abs_tol = 0.02 * abs_tol;
    RhsFn f = [g_n](double t, const StateVec& c, StateVec& dc) {
        dc[0] = Complex(0.0, 1.0) * (t * c[0] - g_n * c[1]);
        dc[1] = Complex(0.0, -1.0) * (t * c[1] + g_n * c[0]);
    };
    integrate_dopri5(f, y, tau0, tau1, {}, {}, opt);
    return {y[0], y[1]};
}

namespace detail {

struct SparseEntry {
    int row;
    int col;
    double value;
};

// H(tau) = A + tau * diag(slope); both pieces are real in the lab bases.
struct DenseParts {
    int dim = 0;
    int n_max = 0;
    std::vector<SparseEntry> a_entries; // includes the diagonal of A
    std::vector<double> slope;
};

inline int flat_index(int x, int n, int n_max) { return x * (n_max + 1) + n; }

inline DenseParts build_parts(const DenseHamiltonianSpec& spec) {
    DenseParts parts;
    parts.n_max = spec.n_max;
    parts.dim = 2 * (spec.n_max + 1);
    parts.slope.assign(parts.dim, 0.0);
    const double slope_sign = spec.model == DenseModel::rwa ? -1.0 : 1.0;
    for (int x = 0; x < 2; ++x) {
        for (int n = 0; n <= spec.n_max; ++n) {
            const int i = flat_index(x, n, spec.n_max);
            parts.slope[i] = slope_sign * sigma_z_eigenvalue(x);
            if (spec.model == DenseModel::full && n > 0) {
                parts.a_entries.push_back({i, i, static_cast<double>(n)});
            }
        }
    }
    for (int n = 0; n < spec.n_max; ++n) {
        const double v = spec.g * std::sqrt(static_cast<double>(n + 1));
        if (spec.model == DenseModel::rwa) {
            // a† sigma_- couples |n,e> and |n+1,g>
            const int i = flat_index(0, n + 1, spec.n_max);
            const int j = flat_index(1, n, spec.n_max);
            parts.a_entries.push_back({i, j, v});
            parts.a_entries.push_back({j, i, v});
        } else {
            // (a + a†) sigma_x couples |x,n> and |xbar,n+1>
            for (int x = 0; x < 2; ++x) {
                const int i = flat_index(1 - x, n + 1, spec.n_max);
                const int j = flat_index(x, n, spec.n_max);
                parts.a_entries.push_back({i, j, v});
                parts.a_entries.push_back({j, i, v});
            }
        }
    }
    return parts;
}

} // namespace detail

/// Dense Hermitian matrix of the selected model at scaled time tau
/// (basis index x*(n_max+1)+n).
inline Eigen::MatrixXcd assemble_hamiltonian(const DenseHamiltonianSpec& spec, double tau) {
    const detail::DenseParts parts = detail::build_parts(spec);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(parts.dim, parts.dim);
    for (const auto& e : parts.a_entries) h(e.row, e.col) += e.value;
    for (int i = 0; i < parts.dim; ++i) h(i, i) += tau * parts.slope[i];
    return h;
}

/// Index groups that the Hamiltonian never couples across (connected
/// components of its sparsity pattern). For the rwa model these are exactly
/// the dressed pairs plus two singlets.
inline std::vector<std::vector<int>> connected_components(const DenseHamiltonianSpec& spec) {
    const detail::DenseParts parts = detail::build_parts(spec);
    std::vector<std::vector<int>> adjacency(parts.dim);
    for (const auto& e : parts.a_entries) {
        if (e.row != e.col && e.value != 0.0) adjacency[e.row].push_back(e.col);
    }
    std::vector<std::vector<int>> components;
    std::vector<char> seen(parts.dim, 0);
    for (int start = 0; start < parts.dim; ++start) {
        if (seen[start]) continue;
        std::vector<int> group;
        std::vector<int> stack = {start};
        seen[start] = 1;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            group.push_back(i);
            for (int j : adjacency[i]) {
                if (!seen[j]) {
                    seen[j] = 1;
                    stack.push_back(j);
                }
            }
        }
        std::sort(group.begin(), group.end());
        components.push_back(std::move(group));
    }
    return components;
}

namespace detail {

struct ComponentBlock {
    std::vector<int> indices;               // global indices, sorted
    std::vector<SparseEntry> a_local;       // A restricted to the block
    std::vector<double> slope_local;        // diagonal slope restricted
};

// exp(-i H dt) v for a Hermitian block, via eigendecomposition.
inline void apply_exp_eig(const Eigen::MatrixXcd& h, double dt, Eigen::VectorXcd& v) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd w = es.eigenvectors().adjoint() * v;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w(i) *= std::polar(1.0, -es.eigenvalues()(i) * dt);
    }
    v = es.eigenvectors() * w;
}

// exp(-i H dt) v via a Chebyshev expansion of the exponential on the
// Gershgorin interval of H; machine-precision alternative for blocks too
// large to eigendecompose every step. H is passed in sparse (triplet) form.
inline void apply_exp_chebyshev(const std::vector<SparseEntry>& a_local,
                                const std::vector<double>& diag_shift, double dt,
                                Eigen::VectorXcd& v) {
    const int m = static_cast<int>(diag_shift.size());
    std::vector<double> diag(m, 0.0);
    std::vector<double> radius(m, 0.0);
    for (const auto& e : a_local) {
        if (e.row == e.col) {
            diag[e.row] += e.value;
        } else {
            radius[e.row] += std::abs(e.value);
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        lo = std::min(lo, diag[i] + diag_shift[i] - radius[i]);
        hi = std::max(hi, diag[i] + diag_shift[i] + radius[i]);
    }
    const double center = 0.5 * (hi + lo);
    const double half_width = 0.5 * (hi - lo) + 1e-12;
    const double theta = half_width * std::abs(dt);

    auto matvec_scaled = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        // out = (H - center) in / half_width
        for (int i = 0; i < m; ++i) {
            out(i) = (diag_shift[i] - center) * in(i);
        }
        for (const auto& e : a_local) out(e.row) += e.value * in(e.col);
        out /= half_width;
    };

    const int k_cap = static_cast<int>(theta + 12.0 * std::cbrt(theta + 1.0)) + 40;
    Eigen::VectorXcd t_prev = v;                      // T_0 v
    Eigen::VectorXcd t_curr(m), t_next(m);
    matvec_scaled(v, t_curr);                          // T_1 v
    Eigen::VectorXcd acc = std::cyl_bessel_j(0, theta) * t_prev;
    Complex ik(0.0, dt >= 0.0 ? -1.0 : 1.0);           // (-i sgn(dt))^k
    Complex coeff_phase = ik;
    for (int k = 1; k <= k_cap; ++k) {
        const double jk = std::cyl_bessel_j(k, theta);
        acc += (2.0 * jk) * (coeff_phase * t_curr);
        if (k > theta && std::abs(jk) < 1e-17) break;
        matvec_scaled(t_curr, t_next);
        t_next = 2.0 * t_next - t_prev;
        t_prev.swap(t_curr);
        t_curr.swap(t_next);
        coeff_phase *= ik;
    }
    v = std::polar(1.0, -center * dt) * acc;
}

} // namespace detail

/// Second-order (midpoint-Magnus) dense propagation: each step applies the
/// exact unitary exp(-i H(tau_mid) dtau), evaluated per uncoupled block.
/// Small blocks go through an eigendecomposition; larger ones use the
/// Chebyshev exponential, accurate to machine precision. Runs at n_steps
/// and 2*n_steps and raises ConvergenceError if the two propagations differ
/// by more than halving_tol in any amplitude.
inline JointState dense_propagate(const DenseHamiltonianSpec& spec, const JointState& state0,
                                  double tau0, double tau1, int n_steps,
                                  double halving_tol = 1e-8) {
    if (n_steps < 1) throw DomainError("dense_propagate: n_steps must be >= 1");
    if (tau1 < tau0) throw DomainError("dense_propagate: tau1 must be >= tau0");
    if (state0.n_max() != spec.n_max) {
        throw DomainError("dense_propagate: state truncation does not match the spec");
    }
    state0.require_normalized(1e-9);

    const detail::DenseParts parts = detail::build_parts(spec);
    const auto components = connected_components(spec);

    // restrict to blocks the initial state actually populates; zero blocks
    // stay exactly zero under block-diagonal unitaries
    std::vector<detail::ComponentBlock> blocks;
    for (const auto& group : components) {
        double weight = 0.0;
        for (int i : group) weight += std::norm(state0.amplitudes()[i]);
        if (weight == 0.0) continue;
        detail::ComponentBlock blk;
        blk.indices = group;
        std::vector<int> position(parts.dim, -1);
        for (std::size_t k = 0; k < group.size(); ++k) position[group[k]] = static_cast<int>(k);
        for (const auto& e : parts.a_entries) {
            if (position[e.row] >= 0 && position[e.col] >= 0) {
                blk.a_local.push_back({position[e.row], position[e.col], e.value});
            }
        }
        blk.slope_local.resize(group.size());
        for (std::size_t k = 0; k < group.size(); ++k) {
            blk.slope_local[k] = parts.slope[group[k]];
        }
        blocks.push_back(std::move(blk));
    }

    auto run = [&](int steps) {
        JointState state = state0;
        const double dt = (tau1 - tau0) / static_cast<double>(steps);
        for (auto& blk : blocks) {
            const int m = static_cast<int>(blk.indices.size());
            Eigen::VectorXcd v(m);
            for (int k = 0; k < m; ++k) v(k) = state.amplitudes()[blk.indices[k]];
            const bool use_eig = m <= 48;
            Eigen::MatrixXcd h;
            if (use_eig) h.resize(m, m);
            std::vector<double> diag_shift(m);
            for (int step = 0; step < steps; ++step) {
                const double tau_mid = tau0 + (static_cast<double>(step) + 0.5) * dt;
                if (use_eig) {
                    h.setZero();
                    for (const auto& e : blk.a_local) h(e.row, e.col) += e.value;
                    for (int k = 0; k < m; ++k) h(k, k) += tau_mid * blk.slope_local[k];
                    detail::apply_exp_eig(h, dt, v);
                } else {
                    for (int k = 0; k < m; ++k) diag_shift[k] = tau_mid * blk.slope_local[k];
                    detail::apply_exp_chebyshev(blk.a_local, diag_shift, dt, v);
                }
            }
            for (int k = 0; k < m; ++k) state.amplitudes()[blk.indices[k]] = v(k);
        }
        return state;
    };

    const JointState coarse = run(n_steps);
    const JointState fine = run(2 * n_steps);
    double max_change = 0.0;
    for (int i = 0; i < coarse.dim(); ++i) {
        max_change = std::max(max_change,
                              std::abs(coarse.amplitudes()[i] - fine.amplitudes()[i]));
    }
    if (max_change > halving_tol) {
        throw ConvergenceError("dense_propagate: halving check failed (change " +
                               std::to_string(max_change) + " > tol)");
    }
    return fine;
}

} // namespace qlz::oracle
