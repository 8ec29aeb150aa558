#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qlz/errors.hpp"

namespace qlz {

using Complex = std::complex<double>;

/// Qubit levels. |g> = |0> carries sigma_z eigenvalue -1, |e> = |1> carries +1.
enum class QubitLevel : int { ground = 0, excited = 1 };

inline double sigma_z_eigenvalue(int x) { return x == 0 ? -1.0 : +1.0; }

/// Amplitude table over (qubit level x in {0,1}) x (photon number n in 0..n_max).
class JointState {
public:
    explicit JointState(int n_max)
        : n_max_(n_max), amp_(2 * static_cast<std::size_t>(n_max + 1), Complex(0.0)) {
        if (n_max < 0) throw DomainError("JointState: n_max must be >= 0");
    }

    /// |n> x |x>, a unit basis state.
    static JointState fock(int n_max, int n, QubitLevel x) {
        JointState s(n_max);
        if (n < 0 || n > n_max) throw DomainError("JointState::fock: n outside 0..n_max");
        s.amp(static_cast<int>(x), n) = 1.0;
        return s;
    }

    int n_max() const { return n_max_; }
    int dim() const { return 2 * (n_max_ + 1); }

    Complex& amp(int x, int n) { return amp_[index(x, n)]; }
    const Complex& amp(int x, int n) const { return amp_[index(x, n)]; }

    std::vector<Complex>& amplitudes() { return amp_; }
    const std::vector<Complex>& amplitudes() const { return amp_; }

    std::size_t index(int x, int n) const {
        if (x < 0 || x > 1 || n < 0 || n > n_max_) {
            throw DomainError("JointState: index (" + std::to_string(x) + "," +
                              std::to_string(n) + ") out of range");
        }
        return static_cast<std::size_t>(x) * (n_max_ + 1) + static_cast<std::size_t>(n);
    }

    double norm_squared() const {
        double s = 0.0;
        for (const Complex& c : amp_) s += std::norm(c);
        return s;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    void require_normalized(double tol = 1e-9) const {
        if (std::abs(norm() - 1.0) > tol) {
            throw DomainError("JointState: not normalized (norm = " + std::to_string(norm()) + ")");
        }
    }

    /// Zero-pad into a larger truncation.
    JointState embedded(int new_n_max) const {
        if (new_n_max < n_max_) throw DomainError("JointState::embedded: would truncate");
        JointState out(new_n_max);
        for (int x = 0; x < 2; ++x)
            for (int n = 0; n <= n_max_; ++n) out.amp(x, n) = amp(x, n);
        return out;
    }

private:
    int n_max_;
    std::vector<Complex> amp_;
};

/// <sigma_z> = sum_n (|amp(1,n)|^2 - |amp(0,n)|^2).
inline double population_difference(const JointState& state) {
    double s = 0.0;
    for (int n = 0; n <= state.n_max(); ++n) {
        s += std::norm(state.amp(1, n)) - std::norm(state.amp(0, n));
    }
    return s;
}

/// Excited-state probability sum_n |amp(1,n)|^2.
inline double excited_probability(const JointState& state) {
    double s = 0.0;
    for (int n = 0; n <= state.n_max(); ++n) s += std::norm(state.amp(1, n));
    return s;
}

} // namespace qlz
