#pragma once

#include <stdexcept>
#include <string>

namespace eivarx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument values or violated preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// AR polynomial with a root on or outside the unit circle.
class UnstableModel : public Error {
public:
    using Error::Error;
};

/// The assumed number of constraints is inconsistent with the data
/// (ill-conditioned rotation solve, singular residual covariance, ...).
class StructureError : public Error {
public:
    using Error::Error;
};

/// Order selection exhausted every candidate without accepting one.
class NoStructureFound : public StructureError {
public:
    using StructureError::StructureError;
};

/// Noise variances collapsed to zero (e.g. noise-free input data).
class DegenerateNoise : public Error {
public:
    using Error::Error;
};

/// File or stream failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace eivarx
