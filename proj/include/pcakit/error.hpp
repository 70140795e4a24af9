#ifndef PCAKIT_ERROR_HPP
#define PCAKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pcakit {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape or dimension contract violated by the caller.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Input data does not satisfy a precondition (non-finite entries, too few
// samples, zero variance, malformed files, ...).
class DataError : public Error {
public:
    using Error::Error;
};

// An iterative routine failed to converge.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace pcakit

#endif
