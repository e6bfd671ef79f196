#pragma once

#include <stdexcept>
#include <string>

namespace xsuperint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// alpha == beta, so b = (beta+alpha)/(beta-alpha) is undefined.
class EqualParametersError : public Error {
public:
    EqualParametersError()
        : Error("alpha == beta: b = (beta+alpha)/(beta-alpha) is singular") {}
};

/// Parameters or evaluation points outside the admissible domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class NoSolutionError : public Error {
public:
    using Error::Error;
};

class NonUniqueSolutionError : public Error {
public:
    using Error::Error;
};

/// A ladder step would leave the index lattice (m >= 0, n >= 1).
class OutOfFamilyError : public Error {
public:
    using Error::Error;
};

/// Neither the printed nor the derived operator maps basis to basis.
class VerificationError : public Error {
public:
    using Error::Error;
};

class InterpolationError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class NumericalOverflowError : public Error {
public:
    using Error::Error;
};

/// Classical trajectory left the wedge 0 < phi < pi/(2k), r > 0.
class WedgeExitError : public Error {
public:
    using Error::Error;
};

/// Energy drift exceeded the guard threshold during integration.
class StepSizeTooLargeError : public Error {
public:
    using Error::Error;
};

class InsufficientSpanError : public Error {
public:
    using Error::Error;
};

}  // namespace xsuperint
