#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bpskit {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-7/2", " 1/100 ". Throws InvalidInput on garbage or a zero
/// denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace bpskit
