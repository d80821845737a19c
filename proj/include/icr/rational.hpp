#pragma once

#include <gmpxx.h>

#include <string>

namespace icr {

using Rational = mpq_class;

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

// Nearest multiple of 2^-48 (ties away from zero).
Rational snap(double x);

double to_double(const Rational& r);

}  // namespace icr
