#ifndef LCURVE_CERTIFICATE_HPP
#define LCURVE_CERTIFICATE_HPP

#include <map>
#include <span>
#include <vector>

#include "lcurve/curve.hpp"
#include "lcurve/interval_set.hpp"

namespace lcurve {

// Observed oscillation of a curve restricted to a compact: for each
// bucket delta, the max of q(gamma(s) - gamma(t)) over grid pairs with
// |s - t| <= delta. `structural` marks tables derived from step
// structure (exact zeros within pieces) rather than grid sampling.
struct ModulusTable {
  Rat grid_step;
  std::vector<std::pair<Rat, double>> buckets;  // (delta, observed max)
  bool structural = false;
};

// Machine-checkable continuity-on-a-large-compact evidence: the compact
// K, the claimed bound measure([0,1] \ K) < eps, and how continuity of
// the restriction is witnessed.
struct LusinCertificate {
  enum class Evidence { Exact, GridChecked };

  CompactSet K;
  Rat eps;
  Evidence evidence = Evidence::Exact;
  std::map<std::size_t, ModulusTable> modulus;  // per seminorm, GridChecked

  Rat complement_measure() const;  // 1 - measure(K), exact
};

// K = [0,1] with eps = 0; valid for any globally continuous curve.
LusinCertificate full_certificate();

// Certificate for the one-step curve y0 * chi_A: the union of inner
// compacts of A and of its complement, each with budget eps/2. The two
// parts have strictly positive mutual gap, so the restriction is locally
// constant.
LusinCertificate char_certificate(const IntervalSet& a, const Rat& eps);

// Certificate for a general step curve (refines by its pieces and the
// off-region, budget eps/(m+1) per cell). Throws when the curve carries
// atoms: point overrides break restriction continuity.
LusinCertificate simple_certificate(const Curve& c, const Rat& eps);

// Dispatch: full certificate for globally continuous curves, the
// structural one for step curves, and for declared-breakpoint curves a
// compact that excludes a neighborhood of each breakpoint.
LusinCertificate continuity_certificate(const Curve& c, const Rat& eps);

// K = intersection of all K_n; the eps bound is the exact sum of the
// members' bounds, and measure([0,1]\K) <= sum measure([0,1]\K_n) is
// verified exactly. Empty input yields the full certificate.
LusinCertificate intersect_certificates(std::span<const LusinCertificate> certs);

// Exact open-and-closed evidence check for a step curve: every piece of
// K must lie wholly inside one curve piece set or wholly outside all of
// them, and distinct-value regions must be separated by positive gaps.
bool exact_evidence_check(const SimpleCurve& c, const CompactSet& K);

// Grid witness of uniform continuity on K: samples gamma on a step-h
// grid (piece endpoints always included) and tabulates the oscillation
// per distance bucket (multiples of h). For step curves under an exact
// certificate the table is structural with modulus 0 within pieces.
ModulusTable certify_restriction(const Curve& c, const CompactSet& K, std::size_t qi,
                                 const Rat& h, int bucket_count = 10);

// Grid points used by certify_restriction and the approximation drivers:
// all piece endpoints of K plus the step-h lattice intersected with K.
std::vector<Rat> compact_grid(const CompactSet& K, const Rat& h);

}  // namespace lcurve

#endif  // LCURVE_CERTIFICATE_HPP
