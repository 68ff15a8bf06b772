#pragma once

#include <stdexcept>
#include <string>

namespace gkp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A magnetic index or measurement outcome is out of range or has the wrong
/// parity relative to J.
class InvalidIndex : public Error {
public:
    using Error::Error;
};

/// Operation is only defined for integer J.
class HalfIntegerUnsupported : public Error {
public:
    using Error::Error;
};

/// The heralding probability of the requested outcome underflowed.
class ZeroProbabilityOutcome : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Sampling grid cannot resolve the state (step too large or range too small).
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

/// Two combs living in different quadratures were combined.
class QuadratureMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace gkp
