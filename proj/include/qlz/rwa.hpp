#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qlz/errors.hpp"
#include "qlz/joint_state.hpp"
#include "qlz/special_functions.hpp"

// Exact weak-coupling (RWA) quantized Landau-Zener dynamics.
//
// The model H(tau) = -tau sigma_z + g(a† sigma_- + a sigma_+) conserves the
// excitation number, so it reduces to independent two-level Landau-Zener
// problems on the dressed pairs {|n,e>, |n+1,g>}, with effective coupling
// g_n = g sqrt(n+1), plus the decoupled |0,g> state which only accumulates
// phase. Each pair problem is solved in closed form by confluent
// hypergeometric functions.

namespace qlz {

/// Run parameters for the RWA solver; times are the scaled tau = v^2 t.
struct RWAParams {
    double g = 0.0;
    double tau0 = 0.0;
    double tau1 = 0.0;
    int n_max = 0;
};

/// Effective coupling of dressed pair n.
inline double pair_coupling(double g, int n) { return g * std::sqrt(static_cast<double>(n + 1)); }

/// The four fundamental amplitudes of one sector at scaled time tau:
/// even/odd solutions of the excited (c1) and ground (c0) second-order
/// equations. (c1e, c0o) and (c1o, c0e) are the two solutions of the coupled
/// first-order system with initial data (1,0) and (0,1) at tau = 0.
struct SectorBasisSolutions {
    Complex c1e;
    Complex c1o;
    Complex c0e;
    Complex c0o;

    /// Constant of the first-order system; identically 1 because the
    /// generator is traceless and the even/odd normalization at tau = 0.
    Complex wronskian() const { return c0e * c1e - c0o * c1o; }
};

inline SectorBasisSolutions basis_solutions(double g_n, double tau) {
    if (!(g_n >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("basis_solutions: need g_n >= 0 and finite tau");
    }
    const double tau_sq = tau * tau;
    const Complex z(0.0, tau_sq);
    const Complex quarter_ig2(0.0, 0.25 * g_n * g_n);
    const Complex envelope = std::polar(1.0, -0.5 * tau_sq);
    const Complex odd_prefactor = Complex(0.0, -1.0) * g_n * tau * envelope;

    SectorBasisSolutions s;
    s.c1e = envelope * hyp1f1({0.5 + quarter_ig2, 0.5, z});
    s.c1o = odd_prefactor * hyp1f1({1.0 + quarter_ig2, 1.5, z});
    s.c0e = envelope * hyp1f1({quarter_ig2, 0.5, z});
    s.c0o = odd_prefactor * hyp1f1({0.5 + quarter_ig2, 1.5, z});
    return s;
}

/// Propagator of dressed pair n over [tau0, tau1], acting on the amplitude
/// vector (c_{n,1}, c_{n,0}) of |n,e> and |n+1,g>.
struct SectorPropagator {
    std::array<std::array<Complex, 2>, 2> u{};
    int n = 0;
    double tau0 = 0.0;
    double tau1 = 0.0;

    std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const {
        return {u[0][0] * v[0] + u[0][1] * v[1], u[1][0] * v[0] + u[1][1] * v[1]};
    }

    /// max-norm of u†u - I
    double unitarity_defect() const {
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                Complex e = std::conj(u[0][i]) * u[0][j] + std::conj(u[1][i]) * u[1][j];
                if (i == j) e -= 1.0;
                worst = std::max(worst, std::abs(e));
            }
        }
        return worst;
    }
};

inline SectorPropagator sector_propagator(double g, int n, double tau0, double tau1) {
    if (n < 0) throw DomainError("sector_propagator: n must be >= 0");
    const double g_n = pair_coupling(g, n);
    const SectorBasisSolutions s0 = basis_solutions(g_n, tau0);
    const SectorBasisSolutions s1 = basis_solutions(g_n, tau1);
    const Complex gamma = s0.wronskian();
    if (std::abs(gamma) < 1e-12) {
        throw ConvergenceError("sector_propagator: normalization factor vanished");
    }
    SectorPropagator p;
    p.n = n;
    p.tau0 = tau0;
    p.tau1 = tau1;
    p.u[0][0] = (s0.c0e * s1.c1e - s0.c0o * s1.c1o) / gamma;
    p.u[0][1] = (s0.c1e * s1.c1o - s0.c1o * s1.c1e) / gamma;
    p.u[1][0] = (s0.c0e * s1.c0o - s0.c0o * s1.c0e) / gamma;
    p.u[1][1] = (s0.c1e * s1.c0e - s0.c1o * s1.c0o) / gamma;
    return p;
}

/// Susskind-Glogower dressing transform T = P_e x I + P_g x V, where
/// V|n> = |n-1>, V|0> = 0. Moves ground-branch amplitudes one photon down;
/// the |0,g> amplitude is annihilated (T is right-unitary, not unitary).
inline JointState apply_sg_transform(const JointState& state) {
    JointState out(state.n_max());
    for (int n = 0; n <= state.n_max(); ++n) out.amp(1, n) = state.amp(1, n);
    for (int n = 0; n < state.n_max(); ++n) out.amp(0, n) = state.amp(0, n + 1);
    return out;
}

/// Adjoint transform T† : ground-branch amplitudes move one photon up.
/// Raises TruncationError if a nonzero amplitude would leave the table.
inline JointState apply_sg_adjoint(const JointState& state) {
    if (state.amp(0, state.n_max()) != 0.0) {
        throw TruncationError("apply_sg_adjoint: amplitude at (g, n_max) would overflow");
    }
    JointState out(state.n_max());
    for (int n = 0; n <= state.n_max(); ++n) out.amp(1, n) = state.amp(1, n);
    for (int n = state.n_max(); n >= 1; --n) out.amp(0, n) = state.amp(0, n - 1);
    return out;
}

/// Exact propagation of the RWA model from tau0 to tau1:
/// U = U0 (P00 + T† U_LZ T) with U0 the pure phase on |0,g> and U_LZ the
/// direct sum of the sector propagators.
inline JointState evolve_rwa(const JointState& state0, const RWAParams& p) {
    if (p.tau1 < p.tau0) throw DomainError("evolve_rwa: tau1 must be >= tau0");
    if (state0.n_max() != p.n_max) {
        throw DomainError("evolve_rwa: state truncation does not match params");
    }
    state0.require_normalized(1e-9);
    if (state0.amp(1, p.n_max) != 0.0) {
        throw TruncationError(
            "evolve_rwa: excited amplitude at n_max has no dressed partner in the table");
    }

    const Complex phase00 = std::polar(1.0, -0.5 * (p.tau1 * p.tau1 - p.tau0 * p.tau0));
    const Complex a00 = state0.amp(0, 0);

    JointState work = apply_sg_transform(state0);
    for (int n = 0; n < p.n_max; ++n) {
        if (work.amp(1, n) == 0.0 && work.amp(0, n) == 0.0) continue;
        const SectorPropagator u = sector_propagator(p.g, n, p.tau0, p.tau1);
        const auto v = u.apply({work.amp(1, n), work.amp(0, n)});
        work.amp(1, n) = v[0];
        work.amp(0, n) = v[1];
    }
    JointState result = apply_sg_adjoint(work);
    result.amp(0, 0) = phase00 * a00;

    if (std::abs(result.norm() - 1.0) > 1e-8) {
        throw ConvergenceError("evolve_rwa: norm drifted beyond 1e-8");
    }
    return result;
}

/// Asymptotic excited-state probability for the symmetric crossing
/// (tau0 -> -inf, tau -> +inf), qubit starting in the ground component of
/// dressed pair n: 1 - exp(-pi g_n^2).
inline double pe_symmetric_crossing(double g, int n) {
    const double g_n = pair_coupling(g, n);
    return 1.0 - std::exp(-std::numbers::pi * g_n * g_n);
}

/// Asymptotic excited-state probability for the half crossing
/// (tau0 = 0, tau -> +inf) within dressed pair n.
inline double pe_half_crossing(double g, int n, bool start_excited) {
    const double g_n = pair_coupling(g, n);
    const double decay = std::exp(-0.5 * std::numbers::pi * g_n * g_n);
    return start_excited ? 0.5 * (1.0 + decay) : 0.5 * (1.0 - decay);
}

} // namespace qlz
