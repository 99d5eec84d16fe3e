#ifndef LCURVE_RATIONAL_HPP
#define LCURVE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace lcurve {

// Exact rational scalar used for all set endpoints, grid points and
// pointwise-space values. Floating point enters only at the quadrature
// boundary (see quadrature.hpp).
using Rat = mpq_class;

// Parses "p/q", integer, or plain decimal ("0.25", "-3.5") text into an
// exact rational. Throws std::invalid_argument on malformed input or a
// zero denominator.
Rat rat_parse(const std::string& text);

// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

double rat_to_double(const Rat& x);

// "p/q" when the denominator is not 1, plain integer text otherwise.
std::string rat_str(const Rat& x);

// Shortest round-trip decimal form of a double (std::to_chars).
std::string double_str(double x);

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// min/max that also accept GMP expression templates (std::min/std::max
// cannot deduce through them).
inline Rat rat_min(Rat a, Rat b) { return b < a ? b : a; }
inline Rat rat_max(Rat a, Rat b) { return a < b ? b : a; }

}  // namespace lcurve

#endif  // LCURVE_RATIONAL_HPP
