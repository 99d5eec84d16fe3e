#ifndef LCURVE_PIECEWISE_HPP
#define LCURVE_PIECEWISE_HPP

#include <vector>

#include "lcurve/interval_set.hpp"
#include "lcurve/rational.hpp"

namespace lcurve {

// Scalar piecewise-affine function on [0,1]: on [breaks[i], breaks[i+1])
// the value is c0[i] + c1[i]*t. Breakpoints are exact rationals (so they
// can be intersected with IntervalSets without tolerance); segment
// coefficients are doubles. breaks.front() == 0, breaks.back() == 1.
//
// This is the common exact-integrand form: every step function, ramp,
// hat profile and their finite linear combinations land here, and
// integrals of |f|^p then reduce to closed-form antiderivatives.
struct PWAffine {
  std::vector<Rat> breaks;
  std::vector<double> c0, c1;

  static PWAffine constant(double value);
  static PWAffine linear(double intercept, double slope);
  // on for t in A, off elsewhere
  static PWAffine step(const IntervalSet& a, double on, double off = 0.0);

  std::size_t segments() const { return c0.size(); }
  double eval(double t) const;
  double eval(const Rat& t) const;
  bool valid() const;
};

PWAffine pw_add(const PWAffine& a, const PWAffine& b);
PWAffine pw_sub(const PWAffine& a, const PWAffine& b);
PWAffine pw_scale(double alpha, const PWAffine& a);
// |f|; inserts the (exact-dyadic) zero crossing of each segment.
PWAffine pw_abs(const PWAffine& a);
// max{f, 0}
PWAffine pw_max0(const PWAffine& a);
// Restriction-style refinement: adds the endpoints of A as breakpoints.
PWAffine pw_refine_at(const PWAffine& a, const std::vector<Rat>& points);

// Exact closed-form integral over [0,1].
double pw_integral(const PWAffine& a);
// Signed integral over a subset.
double pw_integral_over(const PWAffine& a, const IntervalSet& over);
// Integral of f^p over [0,1] (or over a subset) for real p >= 1.
// Requires f >= 0 up to a 1e-12 slack, which is clamped away; a genuinely
// negative segment throws std::domain_error.
double pw_integral_pow(const PWAffine& a, double p);
double pw_integral_pow_over(const PWAffine& a, double p, const IntervalSet& over);
// sup over [0,1] (affine pieces attain extremes at segment ends).
double pw_sup_abs(const PWAffine& a);

}  // namespace lcurve

#endif  // LCURVE_PIECEWISE_HPP
