#pragma once

#include <stdexcept>
#include <string>

namespace backbone {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evaluation too close to a pole of a special function.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// A bracketed root was expected but the scan found none.
struct RootNotFoundError : Error {
    explicit RootNotFoundError(const std::string& msg) : Error(msg) {}
};

// A numerical guard tripped (e.g. imaginary residue above tolerance).
struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// An iterative scheme exhausted its evaluation budget.
struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& msg) : Error(msg) {}
};

// Request exceeds a hard size limit (lattice radius, enumeration width, ...).
struct CapacityError : Error {
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// Exact integer arithmetic would overflow its fixed-width carrier.
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// A regression was requested on degenerate data (e.g. all abscissae equal).
struct DegenerateFitError : Error {
    explicit DegenerateFitError(const std::string& msg) : Error(msg) {}
};

// A statistical check cannot run because an estimate is all-zero.
struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& msg) : Error(msg) {}
};

} // namespace backbone
