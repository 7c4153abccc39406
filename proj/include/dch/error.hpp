#pragma once

#include <stdexcept>
#include <string>

namespace dch {

/// Input that violates a documented precondition (bad file, bad argument).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured resource cap (cube count, enumeration size) was exceeded.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dch
