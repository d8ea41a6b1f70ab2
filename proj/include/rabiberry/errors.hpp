#pragma once

#include <stdexcept>
#include <string>

namespace rabiberry {

// Base of every error thrown by the core. The C API maps each subclass to a status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (omega <= 0, negative g, tol <= 0, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Truncated expansion did not converge (tail too heavy, doubling schedule hit its cap).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Alternating reference sum lost too many digits to cancellation.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// Oracle eigenstate could not be assigned a definite parity.
class ParityError : public Error {
public:
    using Error::Error;
};

// Wilson loop step too coarse to resolve the unreduced phase.
class AliasingError : public Error {
public:
    using Error::Error;
};

} // namespace rabiberry
