#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qlz/detail/double_double.hpp"
#include "qlz/errors.hpp"

namespace qlz {

using Complex = std::complex<double>;

/// Arguments of the confluent hypergeometric function 1F1(a; b; z).
struct Hyp1F1Params {
    Complex a;
    Complex b;
    Complex z;
};

namespace hyp1f1_config {
// Dispatch point between the Maclaurin series and the large-|z| expansion.
// The compensated series carries ~32 digits, so it stays accurate well past
// the switch; the expansion reaches ~1e-12 at |z| = 30 under optimal
// truncation. The outer radii are enforced as preconditions of the explicit
// entry points and leave a wide two-sided overlap window for consistency
// tests.
inline constexpr double switch_radius = 30.0;
inline constexpr double series_max_radius = 50.0;
inline constexpr double asymptotic_min_radius = 20.0;
inline constexpr int series_term_cap = 10000;
} // namespace hyp1f1_config

namespace detail {

inline bool is_real_nonpositive_integer(Complex v) {
    return v.imag() == 0.0 && v.real() <= 0.0 && v.real() == std::round(v.real());
}

// Lanczos coefficients, g = 7, 9 terms.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coeff[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

} // namespace detail

/// Principal branch of log Gamma(z).
///
/// Lanczos approximation on Re z >= 0.5; for Re z < 0.5 the reflection
/// formula with Hare's branch correction keeps the result on the branch that
/// is analytic across the upper/lower half planes. Poles (z = 0, -1, -2, ...)
/// raise DomainError.
inline Complex log_gamma(Complex z) {
    using std::numbers::pi;
    if (detail::is_real_nonpositive_integer(z)) {
        throw DomainError("log_gamma: pole at z = " + std::to_string(z.real()));
    }
    if (z.real() < 0.5) {
        double unwind = std::copysign(2.0 * pi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
        Complex reflected = log_gamma(1.0 - z);
        return Complex(std::log(pi), unwind) - std::log(std::sin(pi * z)) - reflected;
    }
    Complex x = detail::lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) {
        x += detail::lanczos_coeff[i] / (z - 1.0 + static_cast<double>(i));
    }
    Complex t = z + (detail::lanczos_g - 0.5);
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(x);
}

/// Maclaurin series sum_k (a)_k z^k / ((b)_k k!), accumulated in
/// double-double precision (see detail/double_double.hpp for why).
/// Stops when the relative tail drops below tol; exceeding the term cap
/// raises ConvergenceError.
inline Complex hyp1f1_series(const Hyp1F1Params& p, double tol = 1e-15) {
    using namespace detail;
    if (is_real_nonpositive_integer(p.b)) {
        throw DomainError("hyp1f1: b must not be zero or a negative integer");
    }
    if (std::abs(p.z) > hyp1f1_config::series_max_radius) {
        throw DomainError("hyp1f1_series: |z| beyond the series radius");
    }
    DDComplex sum = ddc_from(1.0);
    DDComplex term = ddc_from(1.0);
    const DDComplex z = ddc_from(p.z);
    int consecutive_small = 0;
    for (int k = 0; k < hyp1f1_config::series_term_cap; ++k) {
        DDComplex num = ddc_mul(ddc_add(ddc_from(p.a), ddc_from(static_cast<double>(k))), z);
        DDComplex den = ddc_mul(ddc_add(ddc_from(p.b), ddc_from(static_cast<double>(k))),
                                static_cast<double>(k + 1));
        term = ddc_div(ddc_mul(term, num), den);
        sum = ddc_add(sum, term);
        if (ddc_abs(term) <= tol * ddc_abs(sum)) {
            if (++consecutive_small >= 2) return ddc_to_complex(sum);
        } else {
            consecutive_small = 0;
        }
    }
    throw ConvergenceError("hyp1f1_series: term cap exceeded without convergence");
}

namespace detail {

// One sector of the large-|z| expansion: sum_k (p1)_k (p2)_k / (k! w^k).
// order > 0 sums exactly `order` terms; order == 0 truncates optimally
// (stop at the smallest term, or once the tail is negligible).
inline Complex hyp1f1_asym_sector(Complex p1, Complex p2, Complex w, int order) {
    Complex term = 1.0;
    Complex sum = term;
    double last = 1.0;
    const int cap = order > 0 ? order : 64;
    for (int k = 1; k < cap; ++k) {
        term *= (p1 + static_cast<double>(k - 1)) * (p2 + static_cast<double>(k - 1)) /
                (static_cast<double>(k) * w);
        if (order == 0) {
            double mag = std::abs(term);
            if (mag > last) break;
            sum += term;
            last = mag;
            if (mag <= 1e-17 * std::abs(sum)) break;
        } else {
            sum += term;
        }
    }
    return sum;
}

// Large-|z| expansion of 1F1 (DLMF 13.7.2), principal branches throughout,
// with the e^{i pi a} factor sign tied to sgn(Im z) (upper half plane -> +).
// That convention was validated against the arbitrary-precision oracle on
// both half planes; it is the one consistent with the sector ODE system.
inline Complex hyp1f1_asym_impl(const Hyp1F1Params& p, int order) {
    using std::numbers::pi;
    const Complex a = p.a;
    const Complex b = p.b;
    const Complex z = p.z;
    const double sgn = (z.imag() >= 0.0) ? 1.0 : -1.0;
    const Complex log_z = std::log(z);
    const Complex log_gamma_b = log_gamma(b);
    Complex total = 0.0;
    if (!is_real_nonpositive_integer(b - a)) {
        Complex prefactor =
            std::exp(Complex(0.0, pi * sgn) * a - a * log_z + log_gamma_b - log_gamma(b - a));
        total += prefactor * hyp1f1_asym_sector(a, a - b + 1.0, -z, order);
    }
    if (!is_real_nonpositive_integer(a)) {
        // exp(z) is kept as its own factor: folding z into the exponent sum
        // would round the O(1) terms away against |Im z| as large as 1e12
        Complex prefactor =
            std::exp(z) * std::exp((a - b) * log_z + log_gamma_b - log_gamma(a));
        total += prefactor * hyp1f1_asym_sector(b - a, 1.0 - a, z, order);
    }
    return total;
}

} // namespace detail

/// Two-sector large-|z| expansion truncated after `order` terms per sector.
/// Requires |z| above the asymptotic radius and order >= 1.
inline Complex hyp1f1_asymptotic(const Hyp1F1Params& p, int order = 3) {
    if (order < 1) throw DomainError("hyp1f1_asymptotic: order must be >= 1");
    if (detail::is_real_nonpositive_integer(p.b)) {
        throw DomainError("hyp1f1: b must not be zero or a negative integer");
    }
    if (std::abs(p.z) < hyp1f1_config::asymptotic_min_radius) {
        throw DomainError("hyp1f1_asymptotic: |z| below the asymptotic radius");
    }
    return detail::hyp1f1_asym_impl(p, order);
}

/// Regime-dispatched 1F1: compensated series for |z| <= switch_radius,
/// optimally truncated asymptotic expansion beyond.
inline Complex hyp1f1(const Hyp1F1Params& p) {
    if (std::abs(p.z) <= hyp1f1_config::switch_radius) {
        return hyp1f1_series(p);
    }
    if (detail::is_real_nonpositive_integer(p.b)) {
        throw DomainError("hyp1f1: b must not be zero or a negative integer");
    }
    return detail::hyp1f1_asym_impl(p, 0);
}

} // namespace qlz
