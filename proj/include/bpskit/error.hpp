#pragma once

#include <stdexcept>
#include <string>

namespace bpskit {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (quiver files, flags, presets).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A computation that refused to produce an answer: non-polynomial point
/// counts, BPS integrality failure, enumeration budget exhausted.
class Refusal : public Error {
public:
    using Error::Error;
};

}  // namespace bpskit
