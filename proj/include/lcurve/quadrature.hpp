#ifndef LCURVE_QUADRATURE_HPP
#define LCURVE_QUADRATURE_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lcurve/curve.hpp"
#include "lcurve/piecewise.hpp"

namespace lcurve {

struct QuadOptions {
  double abs_tol = 1e-10;
  long max_cells = 1'000'000;
};

// Provenance-carrying numerical value. For Lp seminorms, `value` is the
// norm and `raw_integral` the integral of q(gamma)^p it was rooted from;
// abs_error_bound brackets the raw integral (0 on the exact branch, the
// Richardson estimate otherwise).
struct QuadratureResult {
  enum class Method { ExactPiecewise, Adaptive };

  double value = 0;
  double raw_integral = 0;
  double abs_error_bound = 0;
  long cells = 0;
  Method method = Method::ExactPiecewise;

  // error bound transported through the p-th root
  double value_error_bound(double p) const;
};

// Raised when adaptive refinement hits the cell cap without meeting the
// tolerance (undeclared singularity / non-integrable configuration).
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A formal linear combination of curves over one space; the unit used by
// every integral operation (norm = 1 term, distance = 2 terms, ...).
struct CurveTerm {
  Rat coef;
  const Curve* curve;
};

// Exact piecewise-affine trace of the comp-th generating coordinate of
// gamma (FiniteDim: coordinate comp; Pointwise: value at the comp-th
// active evaluation point, as an a.e. representative). Black-box curves
// yield nullopt.
std::optional<PWAffine> component_trace(const Curve& c, std::size_t comp);

// Exact nonnegative profile t -> q(sum_i coef_i gamma_i(t)) when every
// term has affine traces; nullopt otherwise.
std::optional<PWAffine> seminorm_profile(std::span<const CurveTerm> terms,
                                         std::size_t qi);

// ||sum coef_i gamma_i||_{Lp,q}; exact piecewise branch when a profile
// exists, adaptive Simpson with Richardson error estimate otherwise.
QuadratureResult lp_combo_norm(std::span<const CurveTerm> terms, std::size_t qi,
                               double p, const QuadOptions& opts = {});
QuadratureResult lp_seminorm(const Curve& c, std::size_t qi, double p,
                             const QuadOptions& opts = {});
QuadratureResult lp_distance(const Curve& a, const Curve& b, std::size_t qi, double p,
                             const QuadOptions& opts = {});

// The unique z with f(z) = integral of f(gamma(t)) dt over `over`, for
// every generating functional f. FiniteDim: coordinatewise; Pointwise:
// a combination of indicators at the active evaluation points.
Vector weak_integral(const Curve& c, const IntervalSet& over,
                     const QuadOptions& opts = {});

// Max over generating functionals of |f(z) - adaptive integral of
// f(gamma)| — an independent re-integration check of the weak integral.
double weak_integral_residual(const Curve& c, const IntervalSet& over, const Vector& z,
                              const QuadOptions& opts = {});

// Samples eta(t) = integral of gamma over [0, t) on a step-h grid and
// reports the per-seminorm continuity modulus of consecutive samples.
struct RunningIntegral {
  std::vector<Rat> ts;
  std::vector<Vector> values;
  std::vector<double> modulus;  // per seminorm index of the space
};
RunningIntegral running_integral(const Curve& c, const Rat& h,
                                 const QuadOptions& opts = {});

// q(integral of gamma) <= integral of q(gamma): both sides plus the
// combined error budget under which the comparison is made.
struct SeminormIntegralCheck {
  double lhs = 0, rhs = 0, error_budget = 0;
  bool pass = false;
};
SeminormIntegralCheck hb_inequality_check(const Curve& c, std::size_t qi,
                                          const QuadOptions& opts = {});

// delta such that every IntervalSet of measure < delta carries
// integral_A q(gamma)^p < budget. Uses the exact integrand profile
// (superlevel-threshold search) when available, otherwise a certified
// sup bound; throws std::domain_error when neither exists.
double abs_continuity_delta(const Curve& c, std::size_t qi, double p, double budget,
                            const QuadOptions& opts = {});

struct PMonotonicity {
  double norm_p = 0, norm_r = 0, error_budget = 0;
  bool pass = false;
};
// ||c||_{Lp,q} <= ||c||_{Lr,q} for p <= r on the probability interval.
PMonotonicity p_monotonicity_check(const Curve& c, std::size_t qi, double p, double r,
                                   const QuadOptions& opts = {});

}  // namespace lcurve

#endif  // LCURVE_QUADRATURE_HPP
