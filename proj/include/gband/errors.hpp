#pragma once

#include <stdexcept>
#include <string>

namespace gband {

/// Bad argument, malformed file, or config violation. CLI maps this to exit 2.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact-enumeration budget was exceeded. CLI maps this to exit 3.
class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A proven library invariant failed at runtime (a defect, not a user error).
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace gband
