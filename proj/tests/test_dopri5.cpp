#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qlz/dopri5.hpp"

using qlz::Complex;
using qlz::StateVec;

TEST_CASE("dopri5 integrates a rotating phase to tolerance") {
    const double omega = 3.5;
    qlz::RhsFn f = [omega](double, const StateVec& y, StateVec& dy) {
        dy[0] = Complex(0.0, omega) * y[0];
    };
    StateVec y = {Complex(1.0, 0.0)};
    qlz::Dopri5Options opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-13;
    const auto stats = qlz::integrate_dopri5(f, y, 0.0, 12.0, {}, {}, opt);
    CHECK(stats.accepted > 10);
    CHECK(std::abs(y[0] - std::polar(1.0, omega * 12.0)) < 1e-9);
}

TEST_CASE("dense output lands on the analytic trajectory between steps") {
    qlz::RhsFn f = [](double t, const StateVec& y, StateVec& dy) {
        dy[0] = Complex(0.0, -t) * y[0]; // y = exp(-i t^2 / 2)
    };
    StateVec y = {Complex(1.0, 0.0)};
    std::vector<double> samples;
    for (int i = 0; i <= 64; ++i) samples.push_back(8.0 * i / 64.0);
    double worst = 0.0;
    qlz::SampleFn on_sample = [&](double t, const StateVec& v) {
        worst = std::max(worst, std::abs(v[0] - std::polar(1.0, -0.5 * t * t)));
    };
    qlz::Dopri5Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-12;
    qlz::integrate_dopri5(f, y, 0.0, 8.0, samples, on_sample, opt);
    CHECK(worst < 1e-8);
}

TEST_CASE("step ceiling is honored") {
    qlz::RhsFn f = [](double, const StateVec& y, StateVec& dy) { dy[0] = 0.01 * y[0]; };
    StateVec y = {Complex(1.0, 0.0)};
    qlz::Dopri5Options opt;
    opt.step_ceiling = [](double) { return 0.05; };
    const auto stats = qlz::integrate_dopri5(f, y, 0.0, 1.0, {}, {}, opt);
    CHECK(stats.accepted >= 20); // 1.0 / 0.05
}

TEST_CASE("step underflow raises ConvergenceError") {
    qlz::RhsFn f = [](double, const StateVec& y, StateVec& dy) { dy[0] = y[0]; };
    StateVec y = {Complex(1.0, 0.0)};
    qlz::Dopri5Options opt;
    opt.step_ceiling = [](double) { return 1e-16; };
    CHECK_THROWS_AS(qlz::integrate_dopri5(f, y, 0.0, 1.0, {}, {}, opt), qlz::ConvergenceError);
}

TEST_CASE("backward requests are rejected") {
    qlz::RhsFn f = [](double, const StateVec& y, StateVec& dy) { dy[0] = y[0]; };
    StateVec y = {Complex(1.0, 0.0)};
    CHECK_THROWS_AS(qlz::integrate_dopri5(f, y, 1.0, 0.0, {}, {}), qlz::DomainError);
}
