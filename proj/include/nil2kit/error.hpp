#pragma once

#include <stdexcept>
#include <string>

namespace nil2kit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Exact and float64 values were combined in one operation.
class BackendMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// The exact backend met a spectrum outside Q(i); retry on float64.
class SpectralIrrationality : public Error {
public:
    using Error::Error;
};

/// A float computation could not be certified within tolerance.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    explicit NumericalFailure(const std::string& what) : Error(what) {}

    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace nil2kit
