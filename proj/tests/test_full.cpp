#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qlz/full.hpp"
#include "qlz/oracle.hpp"

using qlz::Complex;
using qlz::Frame;
using qlz::JointState;
using qlz::QubitLevel;
using qlz::TransformedState;
using Catch::Matchers::WithinAbs;

namespace {

TransformedState lab_state(const JointState& s) {
    return TransformedState::from_joint(s, Frame::lab);
}

} // namespace

TEST_CASE("parity transform: identity on even sectors, qubit swap on odd ones") {
    JointState s(3);
    s.amp(0, 0) = 0.5;
    s.amp(1, 1) = 0.5;
    s.amp(0, 2) = 0.5;
    s.amp(1, 3) = 0.5;
    const TransformedState t = qlz::parity_transform(lab_state(s));
    CHECK(t.frame() == Frame::parity);
    CHECK(t.amp(0, 0) == Complex(0.5)); // even untouched
    CHECK(t.amp(0, 2) == Complex(0.5));
    CHECK(t.amp(0, 1) == Complex(0.5)); // odd swapped
    CHECK(t.amp(1, 1) == Complex(0.0));
    CHECK(t.amp(0, 3) == Complex(0.5));

    const TransformedState back = qlz::parity_transform(t, /*inverse=*/true);
    CHECK(back.frame() == Frame::lab);
    for (int x = 0; x < 2; ++x)
        for (int n = 0; n <= 3; ++n) CHECK(back.amp(x, n) == s.amp(x, n));
}

TEST_CASE("parity transform frame guards") {
    const TransformedState t = qlz::parity_transform(lab_state(JointState(2)));
    CHECK_THROWS_AS(qlz::parity_transform(t, /*inverse=*/false), qlz::DomainError);
    CHECK_THROWS_AS(qlz::parity_transform(lab_state(JointState(2)), /*inverse=*/true),
                    qlz::DomainError);
}

TEST_CASE("conjugated sigma_z weight reproduces (-1)^n sigma_z") {
    // lab |1,e> has sigma_z = +1 but parity weight (-1)^1 * (+1) = -1
    TransformedState t = TransformedState::from_joint(
        JointState::fock(2, 1, QubitLevel::excited), Frame::parity);
    CHECK_THAT(qlz::population_difference(t), WithinAbs(-1.0, 1e-15));

    TransformedState e0 = TransformedState::from_joint(
        JointState::fock(2, 0, QubitLevel::excited), Frame::parity);
    CHECK_THAT(qlz::population_difference(e0), WithinAbs(1.0, 1e-15));

    CHECK_THROWS_AS(qlz::population_difference(lab_state(JointState(2))), qlz::DomainError);
}

TEST_CASE("rotating-frame phase maps invert each other") {
    JointState s(4);
    s.amp(0, 1) = Complex(0.3, 0.4);
    s.amp(1, 3) = Complex(-0.5, 0.1);
    const TransformedState parity = TransformedState::from_joint(s, Frame::parity);
    const double tau = 2.7;
    const TransformedState rotating = qlz::to_rotating_frame(parity, tau);
    const TransformedState back = qlz::to_parity_frame(rotating, tau);
    for (int x = 0; x < 2; ++x) {
        for (int n = 0; n <= 4; ++n) {
            CHECK(std::abs(back.amp(x, n) - parity.amp(x, n)) < 1e-15);
        }
    }
    // phases never change moduli
    CHECK_THAT(rotating.norm(), WithinAbs(parity.norm(), 1e-15));
}

TEST_CASE("rhs vanishes at g = 0 and is tridiagonal per branch") {
    TransformedState state(6, Frame::parity_rotating);
    state.amp(1, 3) = 1.0;

    const TransformedState zero = qlz::rhs(1.3, state, 0.0);
    for (int x = 0; x < 2; ++x)
        for (int n = 0; n <= 6; ++n) CHECK(zero.amp(x, n) == Complex(0.0));

    const double g = 0.4;
    const TransformedState d = qlz::rhs(1.3, state, g);
    for (int n = 0; n <= 6; ++n) {
        CHECK(d.amp(0, n) == Complex(0.0)); // branches never mix
    }
    CHECK_THAT(std::abs(d.amp(1, 2)), WithinAbs(g * std::sqrt(3.0), 1e-14));
    CHECK_THAT(std::abs(d.amp(1, 4)), WithinAbs(g * std::sqrt(4.0), 1e-14));
    for (int n : {0, 1, 3, 5, 6}) CHECK(d.amp(1, n) == Complex(0.0));
}

TEST_CASE("top row keeps only the downward coupling") {
    TransformedState state(3, Frame::parity_rotating);
    state.amp(0, 3) = 1.0;
    const TransformedState d = qlz::rhs(0.7, state, 0.2);
    CHECK(std::abs(d.amp(0, 2)) > 0.0);
    CHECK(d.amp(0, 3) == Complex(0.0));
    CHECK_THROWS_AS(qlz::rhs(0.7, qlz::to_parity_frame(state, 0.7), 0.2), qlz::DomainError);
}

TEST_CASE("rhs matches a finite difference of the dense oracle trajectory") {
    // second-order one-sided difference of the transformed dense propagation,
    // fully independent of the rotating-frame derivation
    const double g = 0.1;
    const int n_max = 8;
    const double tau = 1.0;
    const double delta = 1e-3;
    const JointState initial = JointState::fock(n_max, 0, QubitLevel::excited);
    const qlz::oracle::DenseHamiltonianSpec spec{qlz::oracle::DenseModel::full, g, n_max};

    auto transformed_at = [&](double t) {
        JointState lab = t == tau ? initial
                                  : qlz::oracle::dense_propagate(spec, initial, tau, t, 400);
        return qlz::to_rotating_frame(
            qlz::parity_transform(TransformedState::from_joint(lab, Frame::lab)), t);
    };

    const TransformedState c0 = transformed_at(tau);
    const TransformedState c1 = transformed_at(tau + delta);
    const TransformedState c2 = transformed_at(tau + 2.0 * delta);
    const TransformedState analytic = qlz::rhs(tau, c0, g);

    for (int x = 0; x < 2; ++x) {
        for (int n = 0; n <= n_max; ++n) {
            const Complex fd =
                (-3.0 * c0.amp(x, n) + 4.0 * c1.amp(x, n) - c2.amp(x, n)) / (2.0 * delta);
            INFO("x=" << x << " n=" << n);
            CHECK(std::abs(fd - analytic.amp(x, n)) < 5e-5);
        }
    }
}

TEST_CASE("integrate_full with g = 0 freezes the populations") {
    JointState s(4);
    s.amp(1, 0) = std::sqrt(0.5);
    s.amp(0, 2) = std::sqrt(0.5);
    qlz::FullParams p;
    p.g = 0.0;
    p.tau0 = 1.0;
    p.tau1 = 6.0;
    p.n_max = 4;
    p.samples = 11;
    const auto traj = qlz::integrate_full(s, p);
    REQUIRE(traj.points.size() == 11);
    for (const auto& point : traj.points) {
        CHECK_THAT(std::norm(point.state.amp(1, 0)), WithinAbs(0.5, 1e-10));
        CHECK_THAT(std::norm(point.state.amp(0, 2)), WithinAbs(0.5, 1e-10));
    }
    CHECK(traj.max_norm_drift < 1e-10);
    CHECK_FALSE(traj.truncation_warning);
}

TEST_CASE("integrate_full conserves norm and transformed-frame parity") {
    qlz::FullParams p;
    p.g = 1.0;
    p.tau0 = 1.0;
    p.tau1 = 6.0;
    p.n_max = 30;
    p.samples = 51;
    const JointState initial = JointState::fock(0, 0, QubitLevel::excited);
    const auto traj = qlz::integrate_full(initial, p);
    CHECK(traj.max_norm_drift < 1e-6);
    CHECK_FALSE(traj.truncation_warning);

    double parity0 = 0.0, worst_drift = 0.0;
    bool first = true;
    for (const auto& point : traj.points) {
        double parity = 0.0;
        for (int n = 0; n <= p.n_max; ++n) {
            parity += std::norm(point.state.amp(1, n)) - std::norm(point.state.amp(0, n));
        }
        if (first) {
            parity0 = parity;
            first = false;
        }
        worst_drift = std::max(worst_drift, std::abs(parity - parity0));
    }
    CHECK(worst_drift < 1e-6);
}

TEST_CASE("integrate_full matches the frozen lab population differences") {
    // frozen from an independent dense integration (SciPy DOP853, rtol 1e-10)
    struct Row {
        double g;
        int n_max;
        double expected_sz;
    };
    const Row rows[] = {{0.1, 12, 0.99400885}, {1.0, 30, 0.51639374}};
    for (const auto& row : rows) {
        qlz::FullParams p;
        p.g = row.g;
        p.tau0 = 1.0;
        p.tau1 = 6.0;
        p.n_max = row.n_max;
        p.samples = 2;
        p.rel_tol = 1e-10;
        p.abs_tol = 1e-13;
        const auto traj =
            qlz::integrate_full(JointState::fock(0, 0, QubitLevel::excited), p);
        INFO("g=" << row.g);
        CHECK_THAT(qlz::population_difference(traj.points.back().state),
                   WithinAbs(row.expected_sz, 1e-6));
    }
}

TEST_CASE("trajectory states transform back to a normalized lab state") {
    qlz::FullParams p;
    p.g = 0.5;
    p.tau0 = 1.0;
    p.tau1 = 4.0;
    p.n_max = 20;
    p.samples = 5;
    const auto traj = qlz::integrate_full(JointState::fock(0, 0, QubitLevel::excited), p);
    const auto& last = traj.points.back();
    const JointState lab = qlz::to_lab_state(last.state, last.tau);
    CHECK_THAT(lab.norm(), WithinAbs(1.0, 1e-7));
    // the transformed-frame population difference equals the lab <sigma_z>
    CHECK_THAT(qlz::population_difference(lab),
               WithinAbs(qlz::population_difference(last.state), 1e-10));
}

TEST_CASE("truncation monitor flags an undersized table") {
    qlz::FullParams p;
    p.g = 1.0;
    p.tau0 = 1.0;
    p.tau1 = 6.0;
    p.n_max = 4; // far too small for g = 1
    p.samples = 5;
    const auto traj = qlz::integrate_full(JointState::fock(0, 0, QubitLevel::excited), p);
    CHECK(traj.truncation_warning);
    CHECK(traj.max_top_population > 1e-6);
}

TEST_CASE("integrate_full parameter guards") {
    const JointState s = JointState::fock(0, 0, QubitLevel::excited);
    qlz::FullParams p;
    p.n_max = 10;
    p.tau0 = 2.0;
    p.tau1 = 1.0;
    CHECK_THROWS_AS(qlz::integrate_full(s, p), qlz::DomainError);
    p.tau1 = 3.0;
    p.rel_tol = 0.0;
    CHECK_THROWS_AS(qlz::integrate_full(s, p), qlz::DomainError);
}
