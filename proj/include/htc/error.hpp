// error.hpp: Exception types shared by the engine and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace htc {

/// Invalid physical parameters or configuration values.
class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A basis catalog would exceed the configured size cap.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Diagonalization failure or an unphysical intermediate (e.g. zero decay rate).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace htc
