#pragma once

#include <stdexcept>
#include <string>

namespace seelab {

/// Malformed or inconsistent user input: config files, argument ranges,
/// scheme guards.  Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition of an operation does not hold for the supplied
/// data (dissipativity gap, temperedness, intensity bound).  Maps to CLI
/// exit code 1: the inputs are well-formed but the theory does not apply.
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A tail integral fails to converge for the declared decay class.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem trouble while reading configs or writing reports.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// A trajectory left the representable range (non-finite state entry).
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, long long step, double time, long long path_id)
        : std::runtime_error(what), step(step), time(time), path_id(path_id) {}

    long long step;
    double time;
    long long path_id;
};

} // namespace seelab
