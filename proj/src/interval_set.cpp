#include "lcurve/interval_set.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lcurve {

namespace {

const Rat kZero = rat(0);
const Rat kOne = rat(1);

}  // namespace

IntervalSet IntervalSet::full() { return interval(kZero, kOne); }

IntervalSet IntervalSet::interval(const Rat& lo, const Rat& hi) {
  IntervalSet s;
  Rat l = std::max(lo, kZero), h = std::min(hi, kOne);
  if (l < h) s.pieces.push_back({l, h});
  return s;
}

IntervalSet IntervalSet::from_pieces(std::vector<Piece> raw) {
  std::vector<Piece> clipped;
  for (auto& p : raw) {
    Rat l = std::max(p.lo, kZero), h = std::min(p.hi, kOne);
    if (l < h) clipped.push_back({l, h});
  }
  std::sort(clipped.begin(), clipped.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  IntervalSet s;
  for (auto& p : clipped) {
    if (!s.pieces.empty() && p.lo <= s.pieces.back().hi) {
      if (p.hi > s.pieces.back().hi) s.pieces.back().hi = p.hi;
    } else {
      s.pieces.push_back(p);
    }
  }
  return s;
}

Rat IntervalSet::measure() const {
  Rat m = 0;
  for (const auto& p : pieces) m += p.hi - p.lo;
  return m;
}

bool IntervalSet::contains(const Rat& t) const {
  for (const auto& p : pieces) {
    if (t < p.lo) return false;
    if (t < p.hi) return true;
  }
  return false;
}

bool IntervalSet::valid() const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(kZero <= pieces[i].lo && pieces[i].lo < pieces[i].hi && pieces[i].hi <= kOne))
      return false;
    if (i + 1 < pieces.size() && !(pieces[i].hi <= pieces[i + 1].lo)) return false;
  }
  return true;
}

bool IntervalSet::operator==(const IntervalSet& other) const {
  if (pieces.size() != other.pieces.size()) return false;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].lo != other.pieces[i].lo || pieces[i].hi != other.pieces[i].hi)
      return false;
  return true;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Piece> all = a.pieces;
  all.insert(all.end(), b.pieces.begin(), b.pieces.end());
  return IntervalSet::from_pieces(std::move(all));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < a.pieces.size() && j < b.pieces.size()) {
    const auto& p = a.pieces[i];
    const auto& q = b.pieces[j];
    Rat lo = std::max(p.lo, q.lo), hi = std::min(p.hi, q.hi);
    if (lo < hi) out.pieces.push_back({lo, hi});
    if (p.hi <= q.hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet set_complement(const IntervalSet& a) {
  IntervalSet out;
  Rat cursor = kZero;
  for (const auto& p : a.pieces) {
    if (cursor < p.lo) out.pieces.push_back({cursor, p.lo});
    cursor = p.hi;
  }
  if (cursor < kOne) out.pieces.push_back({cursor, kOne});
  return out;
}

IntervalSet set_diff(const IntervalSet& a, const IntervalSet& b) {
  return set_intersect(a, set_complement(b));
}

IntervalSet set_symm_diff(const IntervalSet& a, const IntervalSet& b) {
  return set_union(set_diff(a, b), set_diff(b, a));
}

CompactSet CompactSet::full() {
  CompactSet k;
  k.pieces.push_back({kZero, kOne});
  return k;
}

CompactSet CompactSet::from_pieces(std::vector<Piece> raw) {
  for (auto& p : raw)
    if (p.lo > p.hi) throw std::invalid_argument("CompactSet: lo > hi");
  std::sort(raw.begin(), raw.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  CompactSet k;
  for (auto& p : raw) {
    if (!k.pieces.empty() && p.lo <= k.pieces.back().hi) {
      if (p.hi > k.pieces.back().hi) k.pieces.back().hi = p.hi;
    } else {
      k.pieces.push_back(p);
    }
  }
  return k;
}

Rat CompactSet::measure() const {
  Rat m = 0;
  for (const auto& p : pieces) m += p.hi - p.lo;
  return m;
}

bool CompactSet::contains(const Rat& t) const {
  for (const auto& p : pieces) {
    if (t < p.lo) return false;
    if (t <= p.hi) return true;
  }
  return false;
}

Rat CompactSet::min_gap() const {
  Rat best = rat(2);
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    best = rat_min(best, pieces[i + 1].lo - pieces[i].hi);
  return best;
}

bool CompactSet::valid() const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(kZero <= pieces[i].lo && pieces[i].lo <= pieces[i].hi && pieces[i].hi <= kOne))
      return false;
    if (i + 1 < pieces.size() && !(pieces[i].hi < pieces[i + 1].lo)) return false;
  }
  return true;
}

bool CompactSet::operator==(const CompactSet& other) const {
  if (pieces.size() != other.pieces.size()) return false;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].lo != other.pieces[i].lo || pieces[i].hi != other.pieces[i].hi)
      return false;
  return true;
}

CompactSet compact_union(const CompactSet& a, const CompactSet& b) {
  std::vector<CompactSet::Piece> all = a.pieces;
  all.insert(all.end(), b.pieces.begin(), b.pieces.end());
  return CompactSet::from_pieces(std::move(all));
}

CompactSet compact_intersect(const CompactSet& a, const CompactSet& b) {
  CompactSet out;
  std::size_t i = 0, j = 0;
  while (i < a.pieces.size() && j < b.pieces.size()) {
    const auto& p = a.pieces[i];
    const auto& q = b.pieces[j];
    Rat lo = std::max(p.lo, q.lo), hi = std::min(p.hi, q.hi);
    if (lo <= hi) out.pieces.push_back({lo, hi});
    if (p.hi <= q.hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet to_interval_set(const CompactSet& k) {
  std::vector<IntervalSet::Piece> ps;
  for (const auto& p : k.pieces)
    if (p.lo < p.hi) ps.push_back({p.lo, p.hi});
  return IntervalSet::from_pieces(std::move(ps));
}

CompactSet closure(const IntervalSet& a) {
  std::vector<CompactSet::Piece> ps;
  for (const auto& p : a.pieces) ps.push_back({p.lo, p.hi});
  return CompactSet::from_pieces(std::move(ps));
}

CompactSet inner_compact(const IntervalSet& a, const Rat& delta) {
  if (delta <= 0) throw std::invalid_argument("inner_compact: delta must be > 0");
  if (a.is_empty()) return CompactSet::empty();
  Rat s = delta / rat(2 * static_cast<long>(a.pieces.size()));
  CompactSet k;
  for (const auto& p : a.pieces) {
    Rat hi = rat_max(p.lo, p.hi - s);
    k.pieces.push_back({p.lo, hi});  // degenerate pieces allowed
  }
  return k;
}

IntervalSet outer_open(const IntervalSet& a, const Rat& delta) {
  if (delta <= 0) throw std::invalid_argument("outer_open: delta must be > 0");
  if (a.is_empty()) return IntervalSet::empty();
  Rat e = delta / rat(4 * static_cast<long>(a.pieces.size()));
  std::vector<IntervalSet::Piece> ps;
  for (const auto& p : a.pieces) ps.push_back({p.lo - e, p.hi + e});
  return IntervalSet::from_pieces(std::move(ps));
}

IntervalSet DyadicCover::as_interval_set() const {
  Rat w = cell_width();
  std::vector<IntervalSet::Piece> ps;
  for (auto k : cells) {
    Rat lo = rat(static_cast<long>(k)) * w;
    ps.push_back({lo, lo + w});
  }
  return IntervalSet::from_pieces(std::move(ps));
}

Rat DyadicCover::cell_width() const {
  Rat w = 1;
  for (int i = 0; i < level; ++i) w /= 2;
  return w;
}

DyadicCover dyadic_majority_at_level(const IntervalSet& a, int level) {
  if (level < 0 || level > 62)
    throw std::invalid_argument("dyadic_majority_at_level: level out of range");
  DyadicCover cover;
  cover.level = level;
  Rat w = cover.cell_width();
  Rat half = w / 2;

  // Cells strictly inside a piece are fully covered and always selected;
  // only the at-most-two boundary cells of each piece need exact overlap
  // arithmetic. Boundary cells of different pieces may coincide, so
  // overlaps accumulate.
  std::map<std::uint64_t, Rat> partial;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> full_runs;
  for (const auto& p : a.pieces) {
    mpz_class lo_idx_z = mpz_class(p.lo.get_num() << level) / p.lo.get_den();
    std::uint64_t k0 = lo_idx_z.get_ui();
    // index of the last cell whose interior meets [lo, hi)
    mpz_class hi_num = p.hi.get_num() << level;
    mpz_class q = hi_num / p.hi.get_den();
    bool exact = (q * p.hi.get_den() == hi_num);
    std::uint64_t k1 = exact ? q.get_ui() - 1 : q.get_ui();
    if (k1 >= k0 + 2) {
      for (std::uint64_t k : {k0, k1}) {
        Rat cl = rat(static_cast<long>(k)) * w;
        partial[k] += rat_min(p.hi, cl + w) - rat_max(p.lo, cl);
      }
      full_runs.push_back({k0 + 1, k1 - 1});
    } else {
      for (std::uint64_t k = k0; k <= k1; ++k) {
        Rat cl = rat(static_cast<long>(k)) * w;
        partial[k] += rat_min(p.hi, cl + w) - rat_max(p.lo, cl);
      }
    }
  }

  for (auto& [k0, k1] : full_runs)
    for (std::uint64_t k = k0; k <= k1; ++k) cover.cells.push_back(k);
  for (auto& [k, overlap] : partial)
    if (overlap > half) cover.cells.push_back(k);
  std::sort(cover.cells.begin(), cover.cells.end());
  cover.cells.erase(std::unique(cover.cells.begin(), cover.cells.end()),
                    cover.cells.end());
  return cover;
}

Rat dyadic_cover_error(const IntervalSet& a, const DyadicCover& cover) {
  return set_symm_diff(a, cover.as_interval_set()).measure();
}

DyadicCover dyadic_cover(const IntervalSet& a, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("dyadic_cover: eps must be > 0");
  for (int level = 0; level <= 62; ++level) {
    DyadicCover cover = dyadic_majority_at_level(a, level);
    if (dyadic_cover_error(a, cover) < eps) return cover;
  }
  throw std::runtime_error("dyadic_cover: level cap exceeded");
}

}  // namespace lcurve
