#pragma once

#include <stdexcept>
#include <string>

namespace disent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

class BlochNormError : public Error {
public:
    using Error::Error;
};

class NotDensityMatrix : public Error {
public:
    using Error::Error;
};

class InfeasibleMachine : public Error {
public:
    using Error::Error;
};

/// Shrink factor is undefined because the input reduced state is I/2.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside the domain of a closed-form evaluator.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace disent
