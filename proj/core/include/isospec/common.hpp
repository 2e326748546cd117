#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input fails a documented precondition (shape, norm, tangency, domain).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A numerical routine could not deliver its guarantee (solver failure,
// ill-conditioned inverse, residual above tolerance).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Eigenvalue gaps below tolerance where a simple spectrum is required.
class DegenerateSpectrum : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Bad CLI flags or config files. The CLI maps this to exit code 3.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace isospec
