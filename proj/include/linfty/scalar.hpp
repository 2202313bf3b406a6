#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace linfty {

/// Exact rational scalar. GMP keeps values in reduced form with a positive
/// denominator.
using Scalar = mpq_class;

/// Canonical text form, always "p/q" (so 3 prints as "3/1").
std::string to_string(const Scalar& s);

/// Parses a strict "p/q" literal: q > 0, gcd(|p|, q) = 1, no floats.
/// Throws InputError with a short reason on failure.
Scalar parse_scalar(std::string_view text);

Scalar factorial(int n);

inline Scalar sign_of(int parity) { return (parity & 1) ? Scalar(-1) : Scalar(1); }

}  // namespace linfty
