#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qlz/dopri5.hpp"
#include "qlz/errors.hpp"
#include "qlz/joint_state.hpp"

// Strong-coupling dynamics of H(tau) = tau sigma_z + a†a + g(a + a†) sigma_x.
//
// The parity transform R = exp(-i pi (sigma_x - 1) a†a / 2) acts as the
// identity on even photon sectors and as sigma_x on odd ones; it conjugates
// the Hamiltonian into H_R = tau sigma_z cos(pi a†a) + a†a + g(a + a†),
// which is diagonal in the qubit basis. Peeling off the free-field rotation
// exp(-i a†a tau) and the diagonal phase exp(-i tau^2 sigma_z cos(pi a†a)/2)
// leaves two uncoupled tridiagonal ODE chains (one per qubit branch):
//
//   dc_{s,n}/dtau = -i g e^{i s tau^2 (-1)^n}
//                   [ sqrt(n) e^{i tau} c_{s,n-1} + sqrt(n+1) e^{-i tau} c_{s,n+1} ]
//
// where s is the sigma_z eigenvalue of the branch. The branch sign placement
// is validated against the dense lab-frame oracle (tests/), not assumed.
// The top row n = n_max keeps only the downward coupling.

namespace qlz {

enum class Frame { lab, parity, parity_rotating };

inline const char* frame_name(Frame f) {
    switch (f) {
        case Frame::lab: return "lab";
        case Frame::parity: return "parity";
        case Frame::parity_rotating: return "parity-rotating";
    }
    return "?";
}

struct FullParams {
    double g = 0.0;
    double tau0 = 1.0;
    double tau1 = 11.0;
    int n_max = 100;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int samples = 2001;
};

/// Amplitude table plus a marker for the frame the amplitudes live in.
class TransformedState {
public:
    TransformedState(int n_max, Frame frame) : frame_(frame), table_(n_max) {}

    static TransformedState from_joint(const JointState& s, Frame frame) {
        TransformedState out(s.n_max(), frame);
        out.table_ = s;
        return out;
    }

    Frame frame() const { return frame_; }
    void set_frame(Frame f) { frame_ = f; }
    int n_max() const { return table_.n_max(); }
    Complex& amp(int x, int n) { return table_.amp(x, n); }
    const Complex& amp(int x, int n) const { return table_.amp(x, n); }
    double norm() const { return table_.norm(); }

    const JointState& table() const { return table_; }

    /// The plain amplitude table; only meaningful as a physical state in the
    /// lab frame.
    JointState to_joint() const {
        if (frame_ != Frame::lab) {
            throw DomainError(std::string("TransformedState::to_joint: state is in the ") +
                              frame_name(frame_) + " frame");
        }
        return table_;
    }

private:
    Frame frame_;
    JointState table_;
};

/// Applies R (forward: lab -> parity) or R† (inverse: parity -> lab).
/// R is a real involution: identity on even sectors, qubit swap on odd ones.
inline TransformedState parity_transform(const TransformedState& state, bool inverse = false) {
    const Frame expected = inverse ? Frame::parity : Frame::lab;
    if (state.frame() != expected) {
        throw DomainError(std::string("parity_transform: expected a ") + frame_name(expected) +
                          "-frame state, got " + frame_name(state.frame()));
    }
    TransformedState out(state.n_max(), inverse ? Frame::lab : Frame::parity);
    for (int n = 0; n <= state.n_max(); ++n) {
        if (n % 2 == 0) {
            out.amp(0, n) = state.amp(0, n);
            out.amp(1, n) = state.amp(1, n);
        } else {
            out.amp(0, n) = state.amp(1, n);
            out.amp(1, n) = state.amp(0, n);
        }
    }
    return out;
}

namespace detail {

// flat layout used during integration: x*(n_max+1) + n
inline void full_rhs_flat(double tau, const StateVec& c, StateVec& dc, double g, int n_max) {
    const int stride = n_max + 1;
    const Complex up_phase = std::polar(1.0, tau);          // e^{+i tau}
    const Complex down_phase = std::conj(up_phase);         // e^{-i tau}
    const Complex chirp = std::polar(1.0, tau * tau);       // e^{+i tau^2}
    for (int x = 0; x < 2; ++x) {
        const double s = sigma_z_eigenvalue(x);
        for (int n = 0; n <= n_max; ++n) {
            const Complex row_phase = (s * (n % 2 == 0 ? 1.0 : -1.0) > 0.0) ? chirp
                                                                            : std::conj(chirp);
            Complex v = 0.0;
            if (n > 0) v += std::sqrt(static_cast<double>(n)) * up_phase * c[x * stride + n - 1];
            if (n < n_max)
                v += std::sqrt(static_cast<double>(n + 1)) * down_phase * c[x * stride + n + 1];
            dc[x * stride + n] = Complex(0.0, -g) * row_phase * v;
        }
    }
}

} // namespace detail

/// Right-hand side of the parity-rotating-frame system at time tau.
inline TransformedState rhs(double tau, const TransformedState& amps, double g) {
    if (amps.frame() != Frame::parity_rotating) {
        throw DomainError("rhs: state must be in the parity-rotating frame");
    }
    const int stride = amps.n_max() + 1;
    StateVec c(2 * stride), dc(2 * stride);
    for (int x = 0; x < 2; ++x)
        for (int n = 0; n < stride; ++n) c[x * stride + n] = amps.amp(x, n);
    detail::full_rhs_flat(tau, c, dc, g, amps.n_max());
    TransformedState out(amps.n_max(), Frame::parity_rotating);
    for (int x = 0; x < 2; ++x)
        for (int n = 0; n < stride; ++n) out.amp(x, n) = dc[x * stride + n];
    return out;
}

/// Diagonal phases connecting the parity frame to the integration variables:
/// c''_{x,n} = e^{+i n tau} e^{+i tau^2 s_x (-1)^n / 2} phi_{x,n}.
inline TransformedState to_rotating_frame(const TransformedState& parity_state, double tau) {
    if (parity_state.frame() != Frame::parity) {
        throw DomainError("to_rotating_frame: expected a parity-frame state");
    }
    TransformedState out(parity_state.n_max(), Frame::parity_rotating);
    for (int x = 0; x < 2; ++x) {
        const double s = sigma_z_eigenvalue(x);
        for (int n = 0; n <= parity_state.n_max(); ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const Complex phase = std::polar(1.0, n * tau + 0.5 * tau * tau * s * sign);
            out.amp(x, n) = phase * parity_state.amp(x, n);
        }
    }
    return out;
}

inline TransformedState to_parity_frame(const TransformedState& rotating_state, double tau) {
    if (rotating_state.frame() != Frame::parity_rotating) {
        throw DomainError("to_parity_frame: expected a parity-rotating-frame state");
    }
    TransformedState out(rotating_state.n_max(), Frame::parity);
    for (int x = 0; x < 2; ++x) {
        const double s = sigma_z_eigenvalue(x);
        for (int n = 0; n <= rotating_state.n_max(); ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const Complex phase = std::polar(1.0, -(n * tau + 0.5 * tau * tau * s * sign));
            out.amp(x, n) = phase * rotating_state.amp(x, n);
        }
    }
    return out;
}

/// Full back-transformation of an emitted trajectory state to the lab frame.
inline JointState to_lab_state(const TransformedState& state, double tau) {
    TransformedState parity = state.frame() == Frame::parity ? state : to_parity_frame(state, tau);
    return parity_transform(parity, /*inverse=*/true).to_joint();
}

/// <sigma_z>(lab) evaluated on a transformed state:
/// sum_n (-1)^n (|amp(1,n)|^2 - |amp(0,n)|^2). The cos(pi a†a) weight is the
/// conjugated sigma_z; the rotating/diagonal phases drop out of the moduli.
inline double population_difference(const TransformedState& state) {
    if (state.frame() == Frame::lab) {
        throw DomainError("population_difference(TransformedState): state is in the lab frame; "
                          "use the JointState overload instead");
    }
    double total = 0.0;
    for (int n = 0; n <= state.n_max(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        total += sign * (std::norm(state.amp(1, n)) - std::norm(state.amp(0, n)));
    }
    return total;
}

struct FullTrajectoryPoint {
    double tau;
    TransformedState state; // parity-rotating frame
};

struct FullTrajectory {
    std::vector<FullTrajectoryPoint> points;
    double max_top_population = 0.0; // largest |amp(x, n_max)|^2 sum seen
    double max_norm_drift = 0.0;
    bool truncation_warning = false;
    Dopri5Stats stats;
};

/// Integrates the truncated system from tau0 to tau1 starting from a
/// normalized lab-frame state, sampling on a uniform tau grid.
/// Sets truncation_warning if the top-sector population ever exceeds 1e-6.
inline FullTrajectory integrate_full(const JointState& state0, const FullParams& p) {
    if (p.n_max < 1) throw DomainError("integrate_full: n_max must be >= 1");
    if (p.tau1 < p.tau0) throw DomainError("integrate_full: tau1 must be >= tau0");
    if (!(p.rel_tol > 0.0) || !(p.abs_tol > 0.0)) {
        throw DomainError("integrate_full: tolerances must be positive");
    }
    if (p.samples < 2) throw DomainError("integrate_full: need at least 2 samples");
    if (state0.n_max() > p.n_max) {
        throw DomainError("integrate_full: initial state exceeds the truncation");
    }
    state0.require_normalized(1e-9);

    const JointState lab = state0.n_max() == p.n_max ? state0 : state0.embedded(p.n_max);
    TransformedState parity = parity_transform(TransformedState::from_joint(lab, Frame::lab));
    TransformedState rotating = to_rotating_frame(parity, p.tau0);

    const int stride = p.n_max + 1;
    StateVec y(2 * stride);
    for (int x = 0; x < 2; ++x)
        for (int n = 0; n < stride; ++n) y[x * stride + n] = rotating.amp(x, n);

    std::vector<double> grid(static_cast<std::size_t>(p.samples));
    for (int i = 0; i < p.samples; ++i) {
        grid[i] = p.tau0 + (p.tau1 - p.tau0) * static_cast<double>(i) /
                               static_cast<double>(p.samples - 1);
    }
    grid.back() = p.tau1;

    FullTrajectory traj;
    traj.points.reserve(grid.size());

    auto monitor = [&](const StateVec& v) {
        double top = std::norm(v[stride - 1]) + std::norm(v[2 * stride - 1]);
        traj.max_top_population = std::max(traj.max_top_population, top);
        double norm_sq = 0.0;
        for (const Complex& c : v) norm_sq += std::norm(c);
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(std::sqrt(norm_sq) - 1.0));
    };

    auto on_sample = [&](double tau, const StateVec& v) {
        TransformedState s(p.n_max, Frame::parity_rotating);
        for (int x = 0; x < 2; ++x)
            for (int n = 0; n < stride; ++n) s.amp(x, n) = v[x * stride + n];
        monitor(v);
        traj.points.push_back({tau, std::move(s)});
    };
    auto on_step = [&](double, const StateVec& v) { monitor(v); };

    Dopri5Options opt;
    opt.rel_tol = p.rel_tol;
    opt.abs_tol = p.abs_tol;
    opt.step_ceiling = [](double t) { return 0.1 / std::max(1.0, std::abs(t)); };

    const double g = p.g;
    const int n_max = p.n_max;
    RhsFn f = [g, n_max](double t, const StateVec& c, StateVec& dc) {
        detail::full_rhs_flat(t, c, dc, g, n_max);
    };
    traj.stats = integrate_dopri5(f, y, p.tau0, p.tau1, grid, on_sample, opt, on_step);

    traj.truncation_warning = traj.max_top_population > 1e-6;
    return traj;
}

} // namespace qlz
