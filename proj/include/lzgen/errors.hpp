// errors.hpp — error types mapped onto the CLI exit codes (2 validation, 3 solver, 4 infeasible)

#pragma once

#include <stdexcept>
#include <string>

namespace lzgen {

struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lzgen
