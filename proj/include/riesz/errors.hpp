#pragma once

#include <stdexcept>

namespace riesz {

/// Two values that must live on the same lattice have different dimensions,
/// or an on-disk object has the wrong shape.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed scalar, file, or mixed scalar modes in one input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace riesz
