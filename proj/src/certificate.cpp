#include "lcurve/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcurve {

namespace {

const Rat kOne = rat(1);

}  // namespace

Rat LusinCertificate::complement_measure() const { return kOne - K.measure(); }

LusinCertificate full_certificate() {
  LusinCertificate cert;
  cert.K = CompactSet::full();
  cert.eps = 0;
  cert.evidence = LusinCertificate::Evidence::Exact;
  return cert;
}

LusinCertificate char_certificate(const IntervalSet& a, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("char_certificate: eps must be > 0");
  Rat half = eps / 2;
  CompactSet inside = a.is_empty() ? CompactSet::empty() : inner_compact(a, half);
  IntervalSet rest = set_complement(a);
  CompactSet outside = rest.is_empty() ? CompactSet::empty() : inner_compact(rest, half);
  LusinCertificate cert;
  cert.K = compact_union(inside, outside);
  cert.eps = eps;
  cert.evidence = LusinCertificate::Evidence::Exact;
  if (cert.complement_measure() >= eps)
    throw std::logic_error("char_certificate: measure bound violated");
  return cert;
}

LusinCertificate simple_certificate(const Curve& c, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("simple_certificate: eps must be > 0");
  const auto& simple = c.as_simple();
  if (!simple.atoms.empty())
    throw std::invalid_argument(
        "simple_certificate: curves with point overrides are not certifiable");
  std::vector<IntervalSet> cells;
  IntervalSet support;
  for (const auto& piece : simple.pieces) {
    cells.push_back(piece.set);
    support = set_union(support, piece.set);
  }
  cells.push_back(set_complement(support));
  Rat budget = eps / rat(static_cast<long>(cells.size()));
  CompactSet k;
  for (const auto& cell : cells)
    if (!cell.is_empty()) k = compact_union(k, inner_compact(cell, budget));
  LusinCertificate cert;
  cert.K = k;
  cert.eps = eps;
  cert.evidence = LusinCertificate::Evidence::Exact;
  if (cert.complement_measure() >= eps)
    throw std::logic_error("simple_certificate: measure bound violated");
  if (!exact_evidence_check(simple, cert.K))
    throw std::logic_error("simple_certificate: open-and-closed evidence failed");
  return cert;
}

LusinCertificate continuity_certificate(const Curve& c, const Rat& eps) {
  if (c.globally_continuous()) return full_certificate();
  if (c.is_simple()) return simple_certificate(c, eps);
  // declared-breakpoint curve: carve out a neighborhood of each breakpoint
  if (eps <= 0) throw std::invalid_argument("continuity_certificate: eps must be > 0");
  std::vector<Rat> bp = c.breakpoints();
  IntervalSet good = IntervalSet::full();
  if (!bp.empty()) {
    Rat r = eps / rat(4 * static_cast<long>(bp.size()));
    std::vector<IntervalSet::Piece> holes;
    for (const auto& b : bp) holes.push_back({b - r, b + r});
    good = set_diff(IntervalSet::full(), IntervalSet::from_pieces(std::move(holes)));
  }
  LusinCertificate cert;
  cert.K = inner_compact(good, eps / 2);
  cert.eps = eps;
  cert.evidence = LusinCertificate::Evidence::GridChecked;
  Rat h = rat_min(eps / 4, rat(1, 128));
  for (std::size_t qi = 0; qi < c.space.seminorm_count(); ++qi)
    cert.modulus[qi] = certify_restriction(c, cert.K, qi, h);
  return cert;
}

LusinCertificate intersect_certificates(std::span<const LusinCertificate> certs) {
  if (certs.empty()) return full_certificate();
  CompactSet k = certs[0].K;
  Rat eps_sum = certs[0].eps;
  Rat complement_sum = certs[0].complement_measure();
  for (std::size_t i = 1; i < certs.size(); ++i) {
    k = compact_intersect(k, certs[i].K);
    eps_sum += certs[i].eps;
    complement_sum += certs[i].complement_measure();
  }
  LusinCertificate out;
  out.K = k;
  out.eps = eps_sum;
  bool all_exact = std::all_of(certs.begin(), certs.end(), [](const auto& c) {
    return c.evidence == LusinCertificate::Evidence::Exact;
  });
  out.evidence = all_exact ? LusinCertificate::Evidence::Exact
                           : LusinCertificate::Evidence::GridChecked;
  if (out.complement_measure() > complement_sum)
    throw std::logic_error("intersect_certificates: subadditivity violated");
  return out;
}

bool exact_evidence_check(const SimpleCurve& c, const CompactSet& K) {
  // Each K piece must sit wholly inside one curve piece set or wholly
  // outside all of them.
  for (const auto& kp : K.pieces) {
    int hits = 0;
    bool contained = false;
    for (const auto& piece : c.pieces) {
      for (const auto& p : piece.set.pieces) {
        bool disjoint = kp.hi < p.lo || kp.lo >= p.hi;
        if (disjoint) continue;
        ++hits;
        contained = (p.lo <= kp.lo) && (kp.hi < p.hi);
      }
    }
    if (hits > 1) return false;
    if (hits == 1 && !contained) return false;
  }
  return K.valid();  // strictly positive gaps between pieces
}

std::vector<Rat> compact_grid(const CompactSet& K, const Rat& h) {
  if (h <= 0) throw std::invalid_argument("compact_grid: step must be > 0");
  std::vector<Rat> grid;
  for (const auto& p : K.pieces) {
    Rat t = p.lo;
    while (t < p.hi) {
      grid.push_back(t);
      t += h;
    }
    grid.push_back(p.hi);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ModulusTable certify_restriction(const Curve& c, const CompactSet& K, std::size_t qi,
                                 const Rat& h, int bucket_count) {
  if (h <= 0) throw std::invalid_argument("certify_restriction: step must be > 0");
  if (qi >= c.space.seminorm_count())
    throw std::out_of_range("certify_restriction: unknown seminorm index");
  ModulusTable table;
  table.grid_step = h;
  if (c.is_simple() && exact_evidence_check(c.as_simple(), K) &&
      c.as_simple().atoms.empty()) {
    table.structural = true;
    for (int j = 1; j <= bucket_count; ++j)
      table.buckets.push_back({h * rat(j), 0.0});
    return table;
  }
  std::vector<Rat> grid = compact_grid(K, h);
  for (const Rat& b : c.breakpoints())  // grids always refine at breakpoints
    if (K.contains(b)) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Vector> values;
  values.reserve(grid.size());
  for (const auto& t : grid) values.push_back(c.eval(t));
  for (int j = 1; j <= bucket_count; ++j) {
    Rat delta = h * rat(j);
    double worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t k = i + 1; k < grid.size(); ++k) {
        if (grid[k] - grid[i] > delta) break;
        worst = std::max(worst,
                         seminorm_eval(c.space, qi, vec_sub(values[i], values[k])));
      }
    }
    table.buckets.push_back({delta, worst});
  }
  return table;
}

}  // namespace lcurve
