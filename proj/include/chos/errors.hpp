// errors.hpp - exception hierarchy shared by all chos components
#pragma once

#include <stdexcept>
#include <string>

namespace chos {

// Bad user input (parameter out of range, malformed config, grid too coarse).
// The message names the offending field.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A configuration that is formally valid but has no answer (e.g. group delay
// at zero splitting).
class singular_config_error : public validation_error {
public:
    explicit singular_config_error(const std::string& msg) : validation_error(msg) {}
};

// Time-domain integration blew up (non-finite state).
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& msg, long step) : std::runtime_error(msg), step_index(step) {}
    long step_index;
};

// An internal self-check failed (e.g. eigen-solver rank test).
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace chos
