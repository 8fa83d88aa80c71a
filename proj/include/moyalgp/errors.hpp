#ifndef MOYALGP_ERRORS_HPP
#define MOYALGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moyalgp {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input outside the mathematical domain of an operation (bad m, n < 1, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A value that must be finite is NaN or infinite.
class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& msg) : Error(msg) {}
};

/// Grid has too few points for the requested stencil.
class GridTooSmallError : public Error {
public:
    explicit GridTooSmallError(const std::string& msg) : Error(msg) {}
};

/// Two fields that must share a grid layout do not.
class GridMismatchError : public Error {
public:
    explicit GridMismatchError(const std::string& msg) : Error(msg) {}
};

/// Momentum outside the band |p| < k where the elliptic ansatz is real.
class MomentumOutOfBandError : public Error {
public:
    explicit MomentumOutOfBandError(const std::string& msg) : Error(msg) {}
};

/// Coefficient matching cannot zero the cubic coefficient (g = 0 with m > 0).
class DegenerateMatchError : public Error {
public:
    explicit DegenerateMatchError(const std::string& msg) : Error(msg) {}
};

/// Normalization requested for a field whose integral (or norm) vanishes.
class ZeroNormError : public Error {
public:
    explicit ZeroNormError(const std::string& msg) : Error(msg) {}
};

} // namespace moyalgp

#endif
