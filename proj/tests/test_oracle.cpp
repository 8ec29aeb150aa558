#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qlz/full.hpp"
#include "qlz/oracle.hpp"
#include "qlz/rwa.hpp"

using qlz::Complex;
using qlz::JointState;
using qlz::QubitLevel;
using qlz::oracle::DenseHamiltonianSpec;
using qlz::oracle::DenseModel;
using Catch::Matchers::WithinAbs;

TEST_CASE("sector ODE oracle reduces to pure phases at g = 0") {
    const double tau0 = -3.0, tau1 = 5.0;
    const auto v = qlz::oracle::ode_sector_oracle(0.0, 4, tau0, tau1,
                                                  {Complex(1.0), Complex(1.0)});
    const double phase = 0.5 * (tau1 * tau1 - tau0 * tau0);
    CHECK(std::abs(v[0] - std::polar(1.0, phase)) < 1e-10);
    CHECK(std::abs(v[1] - std::polar(1.0, -phase)) < 1e-10);
}

TEST_CASE("sector ODE oracle conserves the norm") {
    const auto v = qlz::oracle::ode_sector_oracle(0.1, 31, -10.0, 10.0, {0.0, 1.0});
    CHECK_THAT(std::norm(v[0]) + std::norm(v[1]), WithinAbs(1.0, 1e-10));
}

TEST_CASE("assembled Hamiltonians are exactly Hermitian") {
    for (DenseModel model : {DenseModel::rwa, DenseModel::full}) {
        const DenseHamiltonianSpec spec{model, 0.7, 9};
        for (double tau : {-3.0, 0.0, 2.5}) {
            const Eigen::MatrixXcd h = qlz::oracle::assemble_hamiltonian(spec, tau);
            REQUIRE(h.rows() == 20);
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("rwa matrix splits into dressed pairs plus singlets") {
    const DenseHamiltonianSpec spec{DenseModel::rwa, 0.3, 5};
    const auto components = qlz::oracle::connected_components(spec);
    std::size_t pairs = 0, singlets = 0;
    for (const auto& group : components) {
        REQUIRE(group.size() <= 2);
        if (group.size() == 2) ++pairs;
        if (group.size() == 1) ++singlets;
    }
    CHECK(pairs == 5);    // (|n,e>, |n+1,g>) for n = 0..4
    CHECK(singlets == 2); // |0,g> and |n_max,e>
}

TEST_CASE("full matrix splits into the two parity chains") {
    const DenseHamiltonianSpec spec{DenseModel::full, 0.3, 6};
    const auto components = qlz::oracle::connected_components(spec);
    REQUIRE(components.size() == 2);
    CHECK(components[0].size() == 7);
    CHECK(components[1].size() == 7);
}

TEST_CASE("Chebyshev exponential agrees with the eigendecomposition route") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const int m = 40;
    std::vector<qlz::oracle::detail::SparseEntry> entries;
    std::vector<double> diag_shift(m);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const double d = 10.0 * uniform(rng);
        entries.push_back({i, i, d});
        diag_shift[i] = 3.0 * uniform(rng);
        h(i, i) = d + diag_shift[i];
        if (i + 1 < m) {
            const double off = 5.0 * uniform(rng);
            entries.push_back({i, i + 1, off});
            entries.push_back({i + 1, i, off});
            h(i, i + 1) = off;
            h(i + 1, i) = off;
        }
    }
    Eigen::VectorXcd v(m);
    for (int i = 0; i < m; ++i) v(i) = Complex(uniform(rng), uniform(rng));
    v.normalize();

    const double dt = 0.05;
    Eigen::VectorXcd via_eig = v;
    qlz::oracle::detail::apply_exp_eig(h, dt, via_eig);
    Eigen::VectorXcd via_cheb = v;
    qlz::oracle::detail::apply_exp_chebyshev(entries, diag_shift, dt, via_cheb);
    CHECK((via_eig - via_cheb).cwiseAbs().maxCoeff() < 1e-13);
    CHECK_THAT(via_cheb.norm(), WithinAbs(1.0, 1e-13));
}

TEST_CASE("dense propagation keeps |0,g> on a pure phase (rwa)") {
    const DenseHamiltonianSpec spec{DenseModel::rwa, 0.4, 4};
    const JointState vacuum = JointState::fock(4, 0, QubitLevel::ground);
    const double tau0 = -2.0, tau1 = 3.0;
    const JointState out = qlz::oracle::dense_propagate(spec, vacuum, tau0, tau1, 400);
    const Complex expected = std::polar(1.0, -0.5 * (tau1 * tau1 - tau0 * tau0));
    CHECK(std::abs(out.amp(0, 0) - expected) < 1e-8);
}

TEST_CASE("dense propagation self-convergence guard fires when starved") {
    const DenseHamiltonianSpec spec{DenseModel::rwa, 0.2, 3};
    const JointState s = JointState::fock(3, 1, QubitLevel::ground);
    CHECK_THROWS_AS(qlz::oracle::dense_propagate(spec, s, -10.0, 10.0, 3, 1e-12),
                    qlz::ConvergenceError);
}

TEST_CASE("dense rwa oracle agrees with evolve_rwa on |11,g>") {
    const int n_max = 13;
    const JointState initial = JointState::fock(n_max, 11, QubitLevel::ground);
    const JointState closed_form = qlz::evolve_rwa(initial, {0.1, -10.0, 10.0, n_max});
    const JointState dense = qlz::oracle::dense_propagate({DenseModel::rwa, 0.1, n_max},
                                                          initial, -10.0, 10.0, 30000, 1e-6);
    double worst = 0.0;
    for (int i = 0; i < dense.dim(); ++i) {
        worst = std::max(worst,
                         std::abs(dense.amplitudes()[i] - closed_form.amplitudes()[i]));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("dense full oracle tracks the integrate_full <sigma_z> trace for g = 1") {
    const int n_max = 30;
    const JointState initial = JointState::fock(n_max, 0, QubitLevel::excited);
    qlz::FullParams p;
    p.g = 1.0;
    p.tau0 = 1.0;
    p.tau1 = 6.0;
    p.n_max = n_max;
    p.rel_tol = 1e-10;
    p.abs_tol = 1e-13;
    p.samples = 6;
    const auto traj = qlz::integrate_full(initial, p);

    JointState dense = initial;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        dense = qlz::oracle::dense_propagate({DenseModel::full, 1.0, n_max}, dense,
                                             traj.points[i - 1].tau, traj.points[i].tau, 1500,
                                             2e-5);
        INFO("tau = " << traj.points[i].tau);
        CHECK_THAT(qlz::population_difference(dense),
                   WithinAbs(qlz::population_difference(traj.points[i].state), 1e-4));
    }
    const JointState lab = qlz::to_lab_state(traj.points.back().state, p.tau1);
    double worst = 0.0;
    for (int i = 0; i < dense.dim(); ++i) {
        worst = std::max(worst, std::abs(dense.amplitudes()[i] - lab.amplitudes()[i]));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("dense propagation guards") {
    const DenseHamiltonianSpec spec{DenseModel::rwa, 0.2, 3};
    const JointState s = JointState::fock(3, 1, QubitLevel::ground);
    CHECK_THROWS_AS(qlz::oracle::dense_propagate(spec, s, 0.0, 1.0, 0), qlz::DomainError);
    CHECK_THROWS_AS(qlz::oracle::dense_propagate(spec, s, 1.0, 0.0, 10), qlz::DomainError);
    const JointState wrong = JointState::fock(5, 1, QubitLevel::ground);
    CHECK_THROWS_AS(qlz::oracle::dense_propagate(spec, wrong, 0.0, 1.0, 10), qlz::DomainError);
}
