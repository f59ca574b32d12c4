#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mesh violates a structural invariant (tiling, orientation, degenerate cell).
class MeshError : public Error {
public:
    using Error::Error;
};

/// Malformed mesh file. Carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Problem or discretization cannot be set up (mixed-sign inflow boundary,
/// failed manufactured-solution self-check, bad configuration).
class SetupError : public Error {
public:
    using Error::Error;
};

/// Linear solve failed or missed its residual contract.
class SolverError : public Error {
public:
    using Error::Error;
};

} // namespace wg
