#pragma once

#include <stdexcept>
#include <string>

namespace t2flow {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ConstraintError : std::runtime_error {
    explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

struct EvolutionError : std::runtime_error {
    double tau;
    EvolutionError(const std::string& what, double tau_at)
        : std::runtime_error(what), tau(tau_at) {}
};

struct AnalysisError : std::runtime_error {
    explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace t2flow
