#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Pauli vector outside the Bloch ball beyond the API tolerance.
class NonPhysicalState : public Error {
public:
    explicit NonPhysicalState(const std::string& msg) : Error(msg) {}
};

/// Probability vector violating unit sum or range constraints.
class InvalidProbabilities : public Error {
public:
    explicit InvalidProbabilities(const std::string& msg) : Error(msg) {}
};

/// Rotation axis with zero length.
class ZeroAxis : public Error {
public:
    explicit ZeroAxis(const std::string& msg) : Error(msg) {}
};

/// Estimation requested with no detector clicks.
class EmptyData : public Error {
public:
    explicit EmptyData(const std::string& msg) : Error(msg) {}
};

/// Root finding for the boundary multiplier failed; signals a numerical bug.
class NoRoot : public Error {
public:
    explicit NoRoot(const std::string& msg) : Error(msg) {}
};

/// A fitted probability vanished on a category with observed clicks.
class AllZeroProb : public Error {
public:
    explicit AllZeroProb(const std::string& msg) : Error(msg) {}
};

/// Six-state estimation with an axis that never fired.
class EmptyAxis : public Error {
public:
    explicit EmptyAxis(const std::string& msg) : Error(msg) {}
};

/// The erf-based violation formula is inapplicable at kappa = 0.
class KappaZero : public Error {
public:
    explicit KappaZero(const std::string& msg) : Error(msg) {}
};

/// A closed-form prediction was evaluated outside its validity region.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Fisher information undefined because an outcome probability vanishes.
class SingularInformation : public Error {
public:
    explicit SingularInformation(const std::string& msg) : Error(msg) {}
};

/// Conditional post-measurement state requested for a zero-probability outcome.
class UndefinedPostState : public Error {
public:
    explicit UndefinedPostState(const std::string& msg) : Error(msg) {}
};

/// Malformed experiment configuration; carries a field-level diagnostic.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace tetra
