#pragma once

#include <stdexcept>
#include <string>

namespace linfty {

/// Malformed or inconsistent user input: bad files, degree mismatches,
/// preconditions that a caller violated.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagreed.
class InternalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace linfty
