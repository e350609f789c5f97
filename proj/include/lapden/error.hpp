#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lapden {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A grid, signal or matrix is too small for the requested operator.
class InvalidSize : public Error {
public:
    using Error::Error;
};

/// Operands disagree in length, shape or spacing.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A parameter is out of its admissible range.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Banded LU hit a pivot that is zero to working tolerance.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// Input that cannot be processed, e.g. a zero-norm signal asked to carry relative noise.
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// A time-stepping run produced a non-finite value.
class DivergenceError : public Error {
public:
    DivergenceError(std::size_t iteration, const std::string& what)
        : Error(what + " (iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}

    [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// A malformed text file. `line()` is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A binary or structured file that violates its format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A file or stream held no data.
class EmptyInput : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed at the OS level.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lapden
