#pragma once

#include <stdexcept>
#include <string>

namespace avs {

// Base class for all library faults. Signal-like outcomes (a blocked move,
// a not-yet-fired exit condition) are expressed with std::optional instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct InvalidRotationStep : Error {
    using Error::Error;
};

struct NoLegalAction : Error {
    using Error::Error;
};

// Likelihood field would normalize to zero.
struct AllZeroField : Error {
    using Error::Error;
};

// Prior and likelihood have disjoint support (Bayes denominator is zero).
struct DegeneratePosterior : Error {
    using Error::Error;
};

// Every candidate location has been ruled out.
struct EmptyEliminationSet : Error {
    using Error::Error;
};

struct UnobservableTarget : Error {
    using Error::Error;
};

struct Unreachable : Error {
    using Error::Error;
};

struct GenerationFailed : Error {
    using Error::Error;
};

} // namespace avs
