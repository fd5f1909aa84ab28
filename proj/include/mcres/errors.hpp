#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcres {

/// Base class for all domain errors raised by this library. IO and usage
/// problems are reported with std::runtime_error / std::invalid_argument
/// instead, so callers can map the two groups to distinct exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- parsing ---------------------------------------------------------------

struct ParseError : Error {
    std::size_t offset;  // byte offset into the input text
    ParseError(const std::string& what, std::size_t off)
        : Error(what + " at offset " + std::to_string(off)), offset(off) {}
};

struct UnbalancedParens : ParseError {
    using ParseError::ParseError;
};
struct EmptyConstituent : ParseError {
    using ParseError::ParseError;
};
struct EmptyInput : ParseError {
    using ParseError::ParseError;
};
struct NotDerivable : Error {
    explicit NotDerivable(const std::string& msg) : Error(msg) {}
};

// -- splitting -------------------------------------------------------------

struct EmptyCorpus : Error {
    EmptyCorpus() : Error("corpus is empty") {}
};
struct UnindexedComponent : Error {
    explicit UnindexedComponent(const std::string& key)
        : Error("component not indexed: '" + key + "'") {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};
struct DegenerateSplit : Error {
    explicit DegenerateSplit(const std::string& msg) : Error(msg) {}
};
struct PairingFailed : Error {
    explicit PairingFailed(const std::string& msg) : Error(msg) {}
};

// -- synthetic task --------------------------------------------------------

struct InfeasibleHoldout : Error {
    explicit InfeasibleHoldout(const std::string& msg) : Error(msg) {}
};
struct OverlapViolation : Error {
    explicit OverlapViolation(const std::string& msg) : Error(msg) {}
};

// -- model -----------------------------------------------------------------

struct UnknownToken : Error {
    explicit UnknownToken(const std::string& tok)
        : Error("token not in vocabulary: '" + tok + "'") {}
};
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};
struct NonFiniteGradient : Error {
    explicit NonFiniteGradient(const std::string& msg) : Error(msg) {}
};
struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& msg) : Error(msg) {}
};

// -- reporting ---------------------------------------------------------------

struct IncompatibleRuns : Error {
    explicit IncompatibleRuns(const std::string& msg) : Error(msg) {}
};

}  // namespace mcres
