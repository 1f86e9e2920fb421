#pragma once

#include <gmpxx.h>

#include <string>

namespace ratode {

// Arbitrary-precision rational, always stored in lowest terms with a
// positive denominator (GMP canonical form).
using Rat = mpq_class;
using BigInt = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& s);

} // namespace ratode
