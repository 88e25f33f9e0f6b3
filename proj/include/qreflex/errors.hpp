#pragma once

#include <stdexcept>
#include <string>

namespace qreflex {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vectors of unequal length, rank mismatch, or lattice-tag mismatch.
struct DimensionMismatchError : Error {
    using Error::Error;
};

/// Input not full-dimensional, or the origin is not interior where required.
struct DegeneracyError : Error {
    using Error::Error;
};

/// A halfspace intersection that was required to be bounded is not.
struct UnboundedError : Error {
    UnboundedError(const std::string& what, std::string direction)
        : Error(what + " (recession direction " + direction + ")"), recession_direction(std::move(direction)) {}
    std::string recession_direction;
};

/// Malformed cone (non-pointed, low-dimensional, missing grading).
struct StructureError : Error {
    using Error::Error;
};

/// A Minkowski partition fails the preconditions of a duality operation.
struct PartitionInvalidError : Error {
    using Error::Error;
};

/// Malformed input file.
struct ParseError : Error {
    ParseError(const std::string& what, int line_number)
        : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};

}  // namespace qreflex
