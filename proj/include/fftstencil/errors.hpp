#pragma once

#include <stdexcept>
#include <string>

namespace fftstencil {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments, shape mismatches, violated preconditions.
class SpecError : public Error {
public:
    using Error::Error;
};

/// File parsing / reading / writing problems.
class IoError : public Error {
public:
    using Error::Error;
};

/// Numerical failure detected at runtime (non-finite data, residue blow-up).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Raised by recursive_boundary when the band geometry does not fit the
/// grid; solve_aperiodic catches this and falls back to the naive solver.
class FallbackRequired : public Error {
public:
    using Error::Error;
};

} // namespace fftstencil
