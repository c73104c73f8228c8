#pragma once

#include <stdexcept>
#include <string>

namespace fracstab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition.
struct InvalidArgument : Error {
    using Error::Error;
};

// --- mittag_leffler ---

/// The requested evaluation would exceed the representable floating range.
struct OverflowRisk : Error {
    using Error::Error;
};

/// Order parameter outside (0, 1].
struct InvalidOrder : Error {
    using Error::Error;
};

/// The series did not reach the requested tolerance within the term cap.
struct NonConvergence : Error {
    using Error::Error;
};

// --- linalg ---

struct EmptyMatrix : Error {
    using Error::Error;
};

struct EmptyVector : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// --- gronwall ---

/// A sampled function required to be nondecreasing is not.
struct NotNondecreasing : Error {
    using Error::Error;
};

// --- solver ---

/// A state norm exceeded the blow-up guard during integration.
struct UnstableBlowup : Error {
    using Error::Error;
};

struct InvalidHorizon : Error {
    using Error::Error;
};

// --- stability ---

/// A special-case criterion was requested for a system that does not
/// satisfy the case's hypothesis. The message names the unmet condition.
struct HypothesisViolation : Error {
    using Error::Error;
};

// --- io ---

/// Structural parse failure; carries the 1-based line of the offending text.
struct ParseError : Error {
    int line = 0;
    ParseError(const std::string& msg, int line_) : Error(msg), line(line_) {}
};

/// The document parsed but violates a model invariant; the message names
/// the offending field path (e.g. "delays[1].tau").
struct ValidationError : Error {
    using Error::Error;
};

/// File-system failure; the message includes the path.
struct IoError : Error {
    using Error::Error;
};

}  // namespace fracstab
