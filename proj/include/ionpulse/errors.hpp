// Error hierarchy shared by all ionpulse modules.

#pragma once

#include <stdexcept>
#include <string>

namespace ionpulse {

// Base for every failure the simulator raises on purpose.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: malformed specs, invalid instructions, dimension mismatches.
class ValidationError : public SimulationError {
public:
    explicit ValidationError(const std::string& msg) : SimulationError(msg) {}
};

// An operation would place meaningful amplitude at or beyond the Fock cutoff.
class TruncationError : public SimulationError {
public:
    explicit TruncationError(const std::string& msg) : SimulationError(msg) {}
};

// A schedule block that assumes the shared mode in |0> was applied to a
// state with excited phonon population.
class PhononPreconditionError : public SimulationError {
public:
    explicit PhononPreconditionError(const std::string& msg) : SimulationError(msg) {}
};

// Text-format errors carry the 1-based line they were found on.
class ParseError : public SimulationError {
public:
    ParseError(int line, const std::string& msg)
        : SimulationError("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace ionpulse
