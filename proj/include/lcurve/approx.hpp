#ifndef LCURVE_APPROX_HPP
#define LCURVE_APPROX_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcurve/certificate.hpp"
#include "lcurve/curve.hpp"
#include "lcurve/quadrature.hpp"

namespace lcurve {

// One verified approximation claim: the bound the construction promises
// and the independently measured value, with pass = (measured within
// bound). Serialized as one CSV row.
struct ApproxReport {
  std::string operation;
  std::string seminorm;
  double p = 0;              // 0 when not applicable
  double param = 0;          // n or eps, per operation
  double claimed_bound = 0;
  double measured = 0;
  bool pass = false;
  std::string detail;
};

// Step approximation uniform on the certificate compact: builds a
// uniform partition of mesh below half the admissible modulus step,
// samples the leftmost point of each cell-cap-K, and verifies
// sup_{t in grid on K} q(gamma(t) - beta(t)) < eps on a refinement grid.
// The mesh step comes from a Lipschitz bound when derivable, from the
// exact step structure for simple curves, or from the certificate's
// modulus table; with none available an error asks for finer modulus
// certification.
std::pair<Curve, ApproxReport> uniform_simple_approx(const Curve& c,
                                                     const LusinCertificate& cert,
                                                     std::size_t qi, double eps);

// Density driver: splits eps^p into a tail budget (absolute continuity
// of the integral selects the compact size) and a uniform budget
// eps / 2^(1/p) on the compact; the returned step curve vanishes off the
// compact and the Lp distance is re-measured by independent quadrature.
std::pair<Curve, ApproxReport> lp_simple_approx(const Curve& c, std::size_t qi,
                                                double p, double eps,
                                                const QuadOptions& opts = {});

// Piecewise-linear separation function: 1 on K, 0 off U, linear ramps
// across the margins. Margins must be strictly positive except where a
// piece meets the domain boundary. Throws std::invalid_argument when K
// is not inside U (open in [0,1]) or a ramp would be degenerate.
PWAffine urysohn_1d(const CompactSet& K, const IntervalSet& U);

// The mollified indicator curve alpha_n(t) = f_n(t) * y0 built from the
// inner compact and outer open 1/(2n)-approximations of A, plus one
// verified report per active seminorm: the p-th power distance to
// y0*chi_A is at most q(y0)^p / n.
std::pair<Curve, std::vector<ApproxReport>> continuous_approx_char(
    const Vector& y0, const IntervalSet& a, long n, double p, const SpaceModel& space,
    const QuadOptions& opts = {});

// Cell averages over the level-n dyadic partition: the step curve taking
// on each cell the weak integral over the cell scaled by 2^n. Exact for
// step inputs.
Curve dyadic_average(const Curve& c, int level, const QuadOptions& opts = {});

// Uniform-Cauchy-on-compacts limit pipeline. For each level k the
// members' certificates with budgets (1/k)/2^n are intersected into H_k;
// the tail from index N_k must be eps_k-uniform-Cauchy on a verification
// grid over H_k, with at least two members in the tail. The limit is the
// piecewise patch of beta_{N_k} on H_k with deeper levels taking
// precedence on overlaps, and the paired certificate is the deepest H
// with its measure bound.
struct CauchyWitness {
  std::size_t m = 0, n = 0;  // 1-based member indices
  Rat t;
  double gap = 0;
};

struct CauchyFailure : std::runtime_error {
  CauchyWitness witness;
  CauchyFailure(std::string msg, CauchyWitness w)
      : std::runtime_error(std::move(msg)), witness(w) {}
};

struct LimitLevel {
  int k = 0;
  double eps_k = 0;
  std::size_t tail_index = 0;  // N_k, 1-based
  double checked_sup = 0;      // max pair sup over the certified tail
  Rat complement_bound;        // exact measure([0,1] \ H_k)
};

struct LimitResult {
  Curve limit;
  LusinCertificate cert;
  std::vector<LimitLevel> levels;
};

LimitResult uniform_limit_certificate(std::span<const Curve> seq,
                                      std::span<const double> tails,
                                      std::span<const std::size_t> qset, int depth,
                                      const Rat& grid_step = rat(1, 64));

}  // namespace lcurve

#endif  // LCURVE_APPROX_HPP
