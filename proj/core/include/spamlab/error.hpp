#pragma once

#include <stdexcept>
#include <string>

namespace spamlab {

// Error taxonomy; the CLI maps these to exit codes
// (config/usage -> 1, data/io -> 2, numeric -> 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration: bad hyperparameters, bad flags, inconsistent options.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure: missing file, unreadable path, write failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed or semantically unusable input data (bad CSV row, bad label,
// empty corpus/vocabulary, single-class training set, dimension mismatch).
class DataError : public Error {
public:
    using Error::Error;
};

// Numerical failure: non-finite values, divergence, no convergence,
// ill-conditioned solves.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace spamlab
