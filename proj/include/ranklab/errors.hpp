#pragma once

#include <stdexcept>
#include <string>

namespace ranklab {

/// Mismatched bit-string dimensions or otherwise malformed arguments.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Invalid experiment/algorithm configuration, detected before any query.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The per-run query budget was exhausted.
struct BudgetError : std::runtime_error {
    explicit BudgetError(std::uint64_t budget)
        : std::runtime_error("query budget of " + std::to_string(budget) + " exceeded") {}
};

/// The restart cap was exhausted without reaching the optimum.
struct RestartCapError : std::runtime_error {
    explicit RestartCapError(std::size_t cap)
        : std::runtime_error("restart cap of " + std::to_string(cap) + " exceeded") {}
};

/// A "cannot happen" invariant was violated (e.g. the consistent set of the
/// log-query BinaryValue solver not collapsing to a single string).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ranklab
