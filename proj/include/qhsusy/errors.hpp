#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhsusy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NonHermitianError : public Error {
public:
    using Error::Error;
};

class NonFiniteError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError(std::size_t pivot, double magnitude)
        : Error("singular matrix: pivot " + std::to_string(pivot) + " has magnitude " +
                std::to_string(magnitude)),
          pivot_index(pivot) {}
    std::size_t pivot_index;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, long iterations)
        : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
          iteration_count(iterations) {}
    long iteration_count;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class LayoutError : public Error {
public:
    using Error::Error;
};

class GradeError : public Error {
public:
    using Error::Error;
};

/// Invalid Swanson parameters (alpha == beta, Omega^2 <= 0, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// No metric of the one-parameter family exists at the requested z.
class MetricUndefined : public Error {
public:
    using Error::Error;
};

class NonPositive : public Error {
public:
    using Error::Error;
};

class FactorizationUndefined : public Error {
public:
    using Error::Error;
};

/// A closure identity between derived coefficients failed; indicates an upstream numerical fault.
class IdentityViolation : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace qhsusy
