#pragma once

#include <stdexcept>
#include <string>

namespace rpe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid radar/profile/training parameters.
struct ConfigError : Error {
    using Error::Error;
};

// File-level failures.
struct IoError : Error {
    using Error::Error;
};
struct BadMagicError : IoError {
    using IoError::IoError;
};
struct TruncatedError : IoError {
    using IoError::IoError;
};

// Shape or size violations (mismatched cubes, overflowing headers, ...).
struct DimensionError : Error {
    using Error::Error;
};

// Non-finite loss during training.
struct DivergenceError : Error {
    using Error::Error;
};

}  // namespace rpe
