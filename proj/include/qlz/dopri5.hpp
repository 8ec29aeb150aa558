#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "qlz/errors.hpp"

// Dormand-Prince 5(4) with PI step control and 4th-order dense output,
// for complex state vectors (Hairer, Norsett & Wanner coefficients).

namespace qlz {

using Complex = std::complex<double>;
using StateVec = std::vector<Complex>;
using RhsFn = std::function<void(double, const StateVec&, StateVec&)>;
using SampleFn = std::function<void(double, const StateVec&)>;
using StepFn = std::function<void(double, const StateVec&)>;

struct Dopri5Options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    // optional tau-dependent step ceiling, e.g. 0.1/max(1,|tau|) for
    // right-hand sides oscillating like exp(i tau^2)
    std::function<double(double)> step_ceiling;
};

struct Dopri5Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

namespace detail {

struct Dopri5Tableau {
    static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
    static constexpr double a21 = 0.2;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    // dense output
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

} // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 in place. Sample times must be an
/// ascending sequence inside [t0, t1]; on_sample receives dense-output
/// interpolants there. on_step (optional) fires after each accepted step.
/// Throws ConvergenceError if the step controller underflows.
inline Dopri5Stats integrate_dopri5(const RhsFn& rhs, StateVec& y, double t0, double t1,
                                    std::span<const double> sample_times,
                                    const SampleFn& on_sample, const Dopri5Options& opt = {},
                                    const StepFn& on_step = {}) {
    using T = detail::Dopri5Tableau;
    using C = std::complex<double>;
    if (t1 < t0) throw DomainError("integrate_dopri5: requires t1 >= t0");

    const std::size_t dim = y.size();
    const double span = t1 - t0;
    Dopri5Stats stats;

    auto ceiling = [&](double t) {
        double h = opt.max_step;
        if (opt.step_ceiling) h = std::min(h, opt.step_ceiling(t));
        return h;
    };

    std::size_t next_sample = 0;
    auto emit_initial_samples = [&]() {
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
            on_sample(sample_times[next_sample], y);
            ++next_sample;
        }
    };
    if (on_sample) emit_initial_samples();
    if (span == 0.0) return stats;

    StateVec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
    StateVec y_stage(dim), y_new(dim), y_err(dim);
    StateVec r1(dim), r2(dim), r3(dim), r4(dim), r5(dim);

    rhs(t0, y, k1);
    ++stats.rhs_evaluations;

    // initial step guess from the scaled derivative norm
    double h;
    {
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double sc = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
            d0 += std::norm(y[i] / sc);
            d1n += std::norm(k1[i] / sc);
        }
        h = (d1n > 0.0 && d0 > 0.0) ? 0.01 * std::sqrt(d0 / d1n) : 1e-6 * span;
        h = std::min({h, span, ceiling(t0)});
        h = std::max(h, 1e-10 * span);
    }

    double t = t0;
    double err_previous = 1e-4;
    const double h_floor = std::max(span, 1.0) * 1e-14;
    bool last_rejected = false;

    while (t < t1) {
        h = std::min({h, t1 - t, ceiling(t)});
        if (h < h_floor) {
            throw ConvergenceError("integrate_dopri5: step size underflow at t = " +
                                   std::to_string(t));
        }

        for (std::size_t i = 0; i < dim; ++i) y_stage[i] = y[i] + h * T::a21 * k1[i];
        rhs(t + T::c2 * h, y_stage, k2);
        for (std::size_t i = 0; i < dim; ++i)
            y_stage[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
        rhs(t + T::c3 * h, y_stage, k3);
        for (std::size_t i = 0; i < dim; ++i)
            y_stage[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
        rhs(t + T::c4 * h, y_stage, k4);
        for (std::size_t i = 0; i < dim; ++i)
            y_stage[i] =
                y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
        rhs(t + T::c5 * h, y_stage, k5);
        for (std::size_t i = 0; i < dim; ++i)
            y_stage[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] +
                                     T::a64 * k4[i] + T::a65 * k5[i]);
        rhs(t + h, y_stage, k6);
        for (std::size_t i = 0; i < dim; ++i)
            y_new[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] + T::b5 * k5[i] +
                                   T::b6 * k6[i]);
        rhs(t + h, y_new, k7);
        stats.rhs_evaluations += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            y_err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                            T::e6 * k6[i] + T::e7 * k7[i]);
            double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += std::norm(y_err[i] / sc);
        }
        err = std::sqrt(err / static_cast<double>(dim));

        if (err <= 1.0) {
            // accepted; PI controller (beta = 0.04)
            constexpr double beta = 0.04, safe = 0.9, fac_min = 0.2, fac_max = 10.0;
            double fac11 = std::pow(std::max(err, 1e-16), 0.2 - beta * 0.75);
            double fac = fac11 / std::pow(err_previous, beta);
            fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
            double h_next = h / fac;
            if (last_rejected) h_next = std::min(h_next, h);
            err_previous = std::max(err, 1e-4);
            last_rejected = false;

            if (on_sample && next_sample < sample_times.size()) {
                bool prepared = false;
                while (next_sample < sample_times.size() &&
                       sample_times[next_sample] <= t + h + 1e-14 * std::abs(t + h)) {
                    if (!prepared) {
                        for (std::size_t i = 0; i < dim; ++i) {
                            C dy = y_new[i] - y[i];
                            C bspl = h * k1[i] - dy;
                            r1[i] = y[i];
                            r2[i] = dy;
                            r3[i] = bspl;
                            r4[i] = dy - h * k7[i] - bspl;
                            r5[i] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] +
                                         T::d5 * k5[i] + T::d6 * k6[i] + T::d7 * k7[i]);
                        }
                        prepared = true;
                    }
                    double theta = (sample_times[next_sample] - t) / h;
                    double theta1 = 1.0 - theta;
                    StateVec interp(dim);
                    for (std::size_t i = 0; i < dim; ++i) {
                        interp[i] =
                            r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] +
                                                                               theta1 * r5[i])));
                    }
                    on_sample(sample_times[next_sample], interp);
                    ++next_sample;
                }
            }

            t += h;
            y.swap(y_new);
            k1.swap(k7); // FSAL
            ++stats.accepted;
            if (on_step) on_step(t, y);
            h = h_next;
        } else {
            double fac11 = std::pow(err, 0.2 - 0.04 * 0.75);
            h /= std::min(1.0 / 0.2, fac11 / 0.9);
            last_rejected = true;
            ++stats.rejected;
        }
    }
    return stats;
}

} // namespace qlz
