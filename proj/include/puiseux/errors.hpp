#ifndef PUISEUX_ERRORS_HPP
#define PUISEUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace puiseux {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text could not be parsed; carries a position for diagnostics.
struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line(line),
          column(column) {}
    int line;
    int column;
};

// A series was not stored deeply enough to answer the query soundly.
struct TruncationError : Error {
    using Error::Error;
};

// Certified root clustering failed at the maximum working precision.
// Callers surface this as an "inconclusive" outcome.
struct UnresolvedClusterError : Error {
    using Error::Error;
};

// A ball coefficient could not be decided zero/nonzero at the allowed
// precision, and the decision matters (e.g. Newton polygon membership).
struct AmbiguousZeroError : Error {
    using Error::Error;
};

// Input fails a mini-regularity precondition; message names the condition.
struct NonMiniRegularError : Error {
    using Error::Error;
};

// An internal invariant failed (a bug, or corrupted data).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace puiseux

#endif
