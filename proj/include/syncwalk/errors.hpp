#pragma once

#include <stdexcept>
#include <string>

namespace syncwalk {

/// Invalid argument or malformed input (CLI exit code 2).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The automaton admits no reset word (CLI exit code 3).
class not_synchronizing_error : public std::runtime_error {
public:
    explicit not_synchronizing_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Exploration exceeded the configured subset cap (CLI exit code 4).
class resource_exceeded_error : public std::runtime_error {
public:
    explicit resource_exceeded_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Some transient chain state cannot reach an absorbing state; the
/// expected absorption time is infinite.
class not_absorbing_error : public std::runtime_error {
public:
    explicit not_absorbing_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// No word merges the requested pair of states.
class pair_not_synchronizable_error : public std::runtime_error {
public:
    explicit pair_not_synchronizable_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Float-path elimination hit a pivot below threshold, or a residual
/// check failed after the solve.
class singular_system_error : public std::runtime_error {
public:
    explicit singular_system_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A Monte Carlo trial hit the step cap, or the estimator refused to
/// start because the expectation is too close to it (CLI exit code 6).
class estimate_truncated_error : public std::runtime_error {
public:
    explicit estimate_truncated_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace syncwalk
