#ifndef LCURVE_INTERVAL_SET_HPP
#define LCURVE_INTERVAL_SET_HPP

#include <cstdint>
#include <vector>

#include "lcurve/rational.hpp"

namespace lcurve {

// Finite disjoint union of half-open subintervals [lo, hi) of [0,1].
// Pieces are kept sorted, disjoint and nonempty; all arithmetic on them
// is exact rational arithmetic, so boolean-algebra identities hold with
// equality rather than up to tolerance.
struct IntervalSet {
  struct Piece {
    Rat lo, hi;  // [lo, hi), 0 <= lo < hi <= 1
  };

  std::vector<Piece> pieces;

  static IntervalSet empty() { return {}; }
  static IntervalSet full();
  static IntervalSet interval(const Rat& lo, const Rat& hi);
  // Sorts, clips to [0,1), merges overlap/adjacency, drops empty pieces.
  static IntervalSet from_pieces(std::vector<Piece> raw);

  bool is_empty() const { return pieces.empty(); }
  Rat measure() const;
  bool contains(const Rat& t) const;
  bool valid() const;  // checks the ordering invariant

  bool operator==(const IntervalSet& other) const;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_complement(const IntervalSet& a);  // within [0,1)
IntervalSet set_diff(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_symm_diff(const IntervalSet& a, const IntervalSet& b);

// Finite disjoint union of closed subintervals [lo, hi] of [0,1].
// Degenerate points lo == hi are allowed; consecutive pieces always have
// a strictly positive gap.
struct CompactSet {
  struct Piece {
    Rat lo, hi;  // [lo, hi], lo <= hi
  };

  std::vector<Piece> pieces;

  static CompactSet empty() { return {}; }
  static CompactSet full();  // [0, 1]
  static CompactSet from_pieces(std::vector<Piece> raw);  // sorts and coalesces

  bool is_empty() const { return pieces.empty(); }
  Rat measure() const;
  bool contains(const Rat& t) const;
  // Smallest gap between consecutive pieces; returns 2 when fewer than
  // two pieces exist (no constraint).
  Rat min_gap() const;
  bool valid() const;

  bool operator==(const CompactSet& other) const;
};

CompactSet compact_union(const CompactSet& a, const CompactSet& b);
CompactSet compact_intersect(const CompactSet& a, const CompactSet& b);
// Closure -> half-open pieces; degenerate points are dropped (null sets).
IntervalSet to_interval_set(const CompactSet& k);
// A compact subset of the closure of A: [lo, hi) -> [lo, hi].
CompactSet closure(const IntervalSet& a);

// Inner regularity witness: a compact K with K inside (the closure of) A
// and measure(A) - measure(K) < delta. Each piece [a,b) shrinks to
// [a, max(a, b - s)] with the uniform shrink s = delta / (2k) over the
// k pieces, so the total loss is at most delta/2.
CompactSet inner_compact(const IntervalSet& a, const Rat& delta);

// Outer regularity witness: U containing A, open in [0,1], with
// measure(U) - measure(A) < delta. Each endpoint moves out by
// delta / (4k), clipped to [0,1].
IntervalSet outer_open(const IntervalSet& a, const Rat& delta);

// Selection of cells of the level-n dyadic partition of [0,1).
struct DyadicCover {
  int level = 0;
  std::vector<std::uint64_t> cells;  // sorted indices k < 2^level

  IntervalSet as_interval_set() const;
  Rat cell_width() const;
};

// Majority-rule selection at a fixed level: cell k is selected iff
// measure(A n I_k) > measure(I_k)/2 (ties excluded).
DyadicCover dyadic_majority_at_level(const IntervalSet& a, int level);

// Exact symmetric-difference measure of A against a cover.
Rat dyadic_cover_error(const IntervalSet& a, const DyadicCover& cover);

// Smallest level whose majority-rule cover has symm-diff measure < eps.
// Throws std::invalid_argument when eps <= 0.
DyadicCover dyadic_cover(const IntervalSet& a, const Rat& eps);

}  // namespace lcurve

#endif  // LCURVE_INTERVAL_SET_HPP
