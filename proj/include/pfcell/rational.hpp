#ifndef PFCELL_RATIONAL_HPP
#define PFCELL_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace pfcell {

// Exact rational scalar used throughout: coefficients, interval endpoints,
// sample coordinates. Canonical form is maintained by gmpxx.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p", or "p/q". Throws std::invalid_argument on malformed text.
Rat rat_parse(const std::string& text);

// Canonical form: "p" for integers, "p/q" otherwise. Round-trips through
// rat_parse byte-identically.
std::string rat_str(const Rat& q);

inline int sign_of(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

// Power with non-negative integer exponent.
Rat rat_pow(const Rat& base, unsigned e);

// A rational within distance 2^-bits of the midpoint of [lo,hi], with a
// denominator that is a power of two. Used for stable sample points.
Rat dyadic_between(const Rat& lo, const Rat& hi);

// The rational with the smallest denominator in the closed interval
// [lo, hi] (ties broken toward smaller numerator magnitude).
Rat simplest_in(const Rat& lo, const Rat& hi);

}  // namespace pfcell

#endif
