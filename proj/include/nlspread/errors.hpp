#pragma once

#include <stdexcept>
#include <string>

namespace nlspread {

// Base of all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad scenario/config input (CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Mathematical preconditions violated or computation impossible (CLI exit code 3).
class MathError : public Error {
public:
    explicit MathError(const std::string& msg) : Error(msg) {}
};

class DomainError : public MathError {
public:
    explicit DomainError(const std::string& msg) : MathError(msg) {}
};

// Exponent range would be exceeded; returned instead of infinity.
class OverflowError : public MathError {
public:
    explicit OverflowError(const std::string& msg) : MathError(msg) {}
};

// No sign change found while expanding a root bracket.
class BracketFailure : public MathError {
public:
    explicit BracketFailure(const std::string& msg) : MathError(msg) {}
};

class NoCriticalValue : public MathError {
public:
    explicit NoCriticalValue(const std::string& msg) : MathError(msg) {}
};

class ZeroNegativeMass : public MathError {
public:
    explicit ZeroNegativeMass(const std::string& msg) : MathError(msg) {}
};

class TailMassTooLarge : public MathError {
public:
    explicit TailMassTooLarge(const std::string& msg) : MathError(msg) {}
};

class GridMismatch : public MathError {
public:
    explicit GridMismatch(const std::string& msg) : MathError(msg) {}
};

class InsufficientSamples : public MathError {
public:
    explicit InsufficientSamples(const std::string& msg) : MathError(msg) {}
};

class ConfigMismatch : public MathError {
public:
    explicit ConfigMismatch(const std::string& msg) : MathError(msg) {}
};

class InitialDominationFailure : public MathError {
public:
    explicit InitialDominationFailure(const std::string& msg) : MathError(msg) {}
};

// Two internally redundant computations disagree; indicates a tolerance
// misconfiguration, not a user error.
class InternalInconsistency : public Error {
public:
    explicit InternalInconsistency(const std::string& msg) : Error(msg) {}
};

// Simulation aborted (CLI exit code 4).
class SimulationAbort : public Error {
public:
    explicit SimulationAbort(const std::string& msg) : Error(msg) {}
};

class BoxViolation : public SimulationAbort {
public:
    explicit BoxViolation(const std::string& msg) : SimulationAbort(msg) {}
};

class BoundaryContamination : public SimulationAbort {
public:
    explicit BoundaryContamination(const std::string& msg) : SimulationAbort(msg) {}
};

}  // namespace nlspread
