#pragma once

#include <stdexcept>
#include <string>

namespace mfcalc {

/// Base class for every error the engine reports deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct RingMismatchError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct ShapeMismatchError : Error {
    using Error::Error;
};

struct DegreeUndefinedError : Error {
    using Error::Error;
};

struct NotIsolatedError : Error {
    using Error::Error;
};

struct CriticalValueNonzeroError : Error {
    using Error::Error;
};

struct NotCocycleError : Error {
    using Error::Error;
};

struct NotClosedError : Error {
    using Error::Error;
};

struct NonzeroDegreeZeroError : Error {
    using Error::Error;
};

struct UngradedError : Error {
    using Error::Error;
};

struct WindowNotClosedError : Error {
    using Error::Error;
};

struct NotStabilizedError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& what, int line_, int col_)
        : Error(what + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), col(col_) {}
};

struct SemanticError : Error {
    int statement_index;
    SemanticError(const std::string& what, int stmt)
        : Error(what + " (statement " + std::to_string(stmt) + ")"),
          statement_index(stmt) {}
};

} // namespace mfcalc
