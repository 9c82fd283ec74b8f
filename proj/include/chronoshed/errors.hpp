#pragma once

#include <stdexcept>
#include <string>

namespace chronoshed {

// Malformed input: bad JSON, bad schema, inconsistent job data. CLI exit code 1.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// The instance admits no feasible schedule for the requested operation. CLI exit code 2.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact oracle was asked to exceed its enumeration budget. Never degrades to an
// approximation silently; callers either raise the budget or skip the oracle column.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// A guarantee the algorithms promise (feasibility of an intermediate state, a charging
// bound, a validator check) failed at runtime. Indicates a bug. CLI exit code 3.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace chronoshed
