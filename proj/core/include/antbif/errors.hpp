#pragma once

#include <stdexcept>
#include <string>

namespace antbif {

// Bad input: parameters, sizes, preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that ran but cannot be trusted. Exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw ValidationError(what);
}

}  // namespace antbif
