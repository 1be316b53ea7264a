#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace wefsub {

// Exact rational arithmetic backed by GMP. Values are kept canonical
// (positive denominator, reduced) by every operation we perform.
//
// Note: gmpxx uses expression templates, so never bind an arithmetic
// expression to `auto`; spell out `Rational`.
using Rational = mpq_class;

// Parses "p/q", "p", "-p/q". Decimal points, exponents and a zero
// denominator are rejected; the result is canonicalized.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

std::string join(const std::vector<Rational>& values, std::string_view sep = ", ");

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace wefsub
