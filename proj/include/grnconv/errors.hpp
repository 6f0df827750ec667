#pragma once

#include <stdexcept>
#include <string>

namespace grnconv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative method ran out of budget before reaching its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Root finder called with endpoints whose residuals share a sign.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Root requested outside the parameter regime where it exists.
class CaseError : public Error {
public:
    using Error::Error;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

/// Brute-force or type-class enumeration exceeds its budget.
class SizeError : public Error {
public:
    using Error::Error;
};

/// First-order storage rate outside (0, H(P)].
class RateError : public Error {
public:
    using Error::Error;
};

/// Fidelity level outside the attainable range of a fidelity curve.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Operation undefined for a uniform distribution (zero varentropy).
class UniformError : public Error {
public:
    using Error::Error;
};

class NormError : public Error {
public:
    using Error::Error;
};

/// Malformed probability vector or level list.
class DistributionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace grnconv
