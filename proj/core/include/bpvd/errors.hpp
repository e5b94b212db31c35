#pragma once

#include <stdexcept>
#include <string>

namespace bpvd {

/// Search or solve exceeded its configured work budget.  Always distinguishable
/// from a negative answer: budgeted routines either finish exactly or throw.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A property guaranteed by construction failed at runtime.  Indicates a bug,
/// not bad input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what)
        : std::logic_error(what) {}
};

} // namespace bpvd
