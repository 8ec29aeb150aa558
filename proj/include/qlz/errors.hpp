#pragma once

#include <stdexcept>
#include <string>

namespace qlz {

/// Precondition violations: arguments outside an operation's domain
/// (function poles, invalid dispatch radii, frame mismatches, bad state specs).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Numerical failures: series term caps exceeded, step-size underflow,
/// failed self-convergence checks.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A nonzero amplitude would leave the truncated Fock space.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qlz
