#pragma once

#include <stdexcept>
#include <string>

namespace pfp {

// Error categories map onto CLI exit codes: precondition/structural -> 2,
// resource -> 3, invariant -> 4.

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class StructuralError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t required)
        : std::runtime_error(what), required_(required) {}

    std::size_t required() const noexcept { return required_; }

private:
    std::size_t required_;
};

class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw PreconditionError(message);
}

} // namespace pfp
