#pragma once

#include <gmpxx.h>

#include <string>

namespace qmono {

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (GMP canonicalizes after every arithmetic operation).
using Rational = mpq_class;
using Integer = mpz_class;

inline Integer factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Rational rational_pow(const Rational& base, unsigned e)
{
    Rational r(1);
    for (unsigned i = 0; i < e; ++i)
        r *= base;
    return r;
}

/// `num/den`, or just `num` when the denominator is one.
inline std::string to_string(const Rational& r)
{
    return r.get_str();
}

} // namespace qmono
