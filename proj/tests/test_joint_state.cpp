#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qlz/joint_state.hpp"

using qlz::Complex;
using qlz::JointState;
using qlz::QubitLevel;
using Catch::Matchers::WithinAbs;

TEST_CASE("fock factory builds normalized basis states") {
    const JointState s = JointState::fock(5, 3, QubitLevel::excited);
    CHECK(s.norm() == 1.0);
    CHECK(s.amp(1, 3) == Complex(1.0));
    CHECK(s.amp(0, 3) == Complex(0.0));
    CHECK_THROWS_AS(JointState::fock(2, 3, QubitLevel::ground), qlz::DomainError);
}

TEST_CASE("population difference on basis states and superpositions") {
    CHECK(qlz::population_difference(JointState::fock(4, 2, QubitLevel::excited)) == 1.0);
    CHECK(qlz::population_difference(JointState::fock(4, 2, QubitLevel::ground)) == -1.0);

    JointState plus(1);
    const double isq2 = 1.0 / std::sqrt(2.0);
    plus.amp(0, 0) = isq2; // |0,g>
    plus.amp(1, 0) = isq2; // |0,e>
    plus.require_normalized();
    CHECK_THAT(qlz::population_difference(plus), WithinAbs(0.0, 1e-15));
}

TEST_CASE("normalization guard") {
    JointState s(2);
    s.amp(0, 0) = 0.5;
    CHECK_THROWS_AS(s.require_normalized(), qlz::DomainError);
}

TEST_CASE("embedding preserves amplitudes") {
    JointState s = JointState::fock(2, 1, QubitLevel::ground);
    const JointState big = s.embedded(6);
    CHECK(big.n_max() == 6);
    CHECK(big.amp(0, 1) == Complex(1.0));
    CHECK(big.norm() == 1.0);
    CHECK_THROWS_AS(big.embedded(3), qlz::DomainError);
}

TEST_CASE("index guards") {
    JointState s(2);
    CHECK_THROWS_AS(s.amp(0, 3), qlz::DomainError);
    CHECK_THROWS_AS(s.amp(2, 0), qlz::DomainError);
}
