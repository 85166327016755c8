#pragma once

#include <stdexcept>
#include <string>

namespace tdi {

// Dimension/length mismatches between vectors, points and systems.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematically invalid argument (zero dilation factor, non-prime modulus, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally invalid input (non-homogeneous seed, zero coefficient, not a solution, ...).
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Instance exceeds a stated enumeration/memory budget; the operation refuses to run.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Exact integer arithmetic would leave the supported range.
struct ArithmeticError : std::runtime_error {
    explicit ArithmeticError(const std::string& what) : std::runtime_error(what) {}
};

// Memory or recursion budget exceeded mid-computation.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A tuple of forms failed the translation-decomposition check.
struct NotTdiError : std::runtime_error {
    explicit NotTdiError(const std::string& what) : std::runtime_error(what) {}
};

// A witness search that is guaranteed to succeed came up empty; signals a bug.
struct CertificationError : std::logic_error {
    explicit CertificationError(const std::string& what) : std::logic_error(what) {}
};

// Parse failure for the text formats (polynomials, system specs, manifests).
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(what), line(line), column(column) {}
    int line;
    int column;
};

}  // namespace tdi
