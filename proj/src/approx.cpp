#include "lcurve/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcurve {

namespace {

const Rat kZero = rat(0);
const Rat kOne = rat(1);

// Pieces of [cell_lo, cell_hi) intersected with K, split into half-open
// parts plus the closed right endpoints that the half-open form loses.
struct CellCap {
  IntervalSet parts;
  std::vector<Rat> closed_points;  // right endpoints interior to the cell
  bool empty() const { return parts.is_empty() && closed_points.empty(); }
  Rat leftmost() const {
    Rat best = rat(2);
    if (!parts.is_empty()) best = parts.pieces.front().lo;
    for (const auto& p : closed_points) best = std::min(best, p);
    return best;
  }
};

CellCap cell_cap(const CompactSet& K, const Rat& lo, const Rat& hi) {
  CellCap cap;
  std::vector<IntervalSet::Piece> parts;
  for (const auto& kp : K.pieces) {
    Rat a = std::max(kp.lo, lo);
    Rat b = std::min(kp.hi, hi);
    if (a > b) continue;
    if (b == hi) {
      // the K piece runs past the cell; [a, hi) is already half-open
      if (a < b) parts.push_back({a, b});
    } else {
      // closed right end inside the cell
      if (a < b) parts.push_back({a, b});
      cap.closed_points.push_back(b);
    }
  }
  cap.parts = IntervalSet::from_pieces(std::move(parts));
  return cap;
}

long mesh_cells_from(double delta) {
  if (!(delta > 0)) throw std::invalid_argument("uniform_simple_approx: bad mesh bound");
  double cells = std::ceil(2.0 / delta);
  if (cells > double(1L << 22))
    throw std::invalid_argument(
        "uniform_simple_approx: modulus metadata requires too fine a partition");
  return std::max(1L, static_cast<long>(cells));
}

}  // namespace

std::pair<Curve, ApproxReport> uniform_simple_approx(const Curve& c,
                                                     const LusinCertificate& cert,
                                                     std::size_t qi, double eps) {
  if (eps <= 0) throw std::invalid_argument("uniform_simple_approx: eps must be > 0");
  if (qi >= c.space.seminorm_count())
    throw std::out_of_range("uniform_simple_approx: unknown seminorm index");

  // admissible oscillation step
  double delta = 0;
  if (auto lip = c.lipschitz(qi)) {
    delta = *lip == 0 ? 0.5 : std::min(0.5, eps / *lip);
  } else if (c.is_simple() && cert.evidence == LusinCertificate::Evidence::Exact) {
    delta = std::min(0.5, rat_to_double(cert.K.min_gap()));
  } else if (auto it = cert.modulus.find(qi); it != cert.modulus.end()) {
    for (const auto& [bucket, observed] : it->second.buckets)
      if (observed < eps) delta = std::max(delta, rat_to_double(bucket));
    if (delta == 0)
      throw std::invalid_argument(
          "uniform_simple_approx: no modulus bucket below eps; certify the "
          "restriction with a finer grid");
  } else {
    throw std::invalid_argument(
        "uniform_simple_approx: no Lipschitz bound or modulus table for this "
        "seminorm; run certify_restriction first");
  }

  long cells = mesh_cells_from(delta);
  Rat mesh = rat(1, cells);
  Rat refine = mesh / 4;

  std::vector<SimpleCurve::Piece> pieces;
  std::vector<SimpleCurve::Atom> atoms;
  double grid_sup = 0;
  Rat worst_t = 0;
  for (long i = 0; i < cells; ++i) {
    Rat lo = rat(i) * mesh;
    Rat hi = lo + mesh;
    CellCap cap = cell_cap(cert.K, lo, hi);
    if (cap.empty()) continue;
    Rat sample = cap.leftmost();
    Vector value = c.eval(sample);
    if (!cap.parts.is_empty()) pieces.push_back({value, cap.parts});
    for (const auto& t : cap.closed_points)
      atoms.push_back({t, value});

    // verification grid: piece endpoints plus a refinement lattice
    std::vector<Rat> check_points = cap.closed_points;
    for (const auto& p : cap.parts.pieces) {
      Rat t = p.lo;
      while (t < p.hi) {
        check_points.push_back(t);
        t += refine;
      }
    }
    for (const auto& t : check_points) {
      double err = seminorm_eval(c.space, qi, vec_sub(c.eval(t), value));
      if (err > grid_sup) {
        grid_sup = err;
        worst_t = t;
      }
    }
  }
  // the endpoint gets its own value, as a null atom
  std::erase_if(atoms, [](const SimpleCurve::Atom& a) { return a.at == kOne; });
  atoms.push_back({kOne, c.eval(kOne)});

  if (grid_sup >= eps)
    throw std::logic_error("uniform_simple_approx: grid sup " + double_str(grid_sup) +
                           " at t=" + rat_str(worst_t) + " exceeds eps");

  Curve beta = make_simple(c.space, std::move(pieces), std::move(atoms));
  ApproxReport report;
  report.operation = "uniform_simple_approx";
  report.seminorm = c.space.seminorm_name(qi);
  report.param = eps;
  report.claimed_bound = eps;
  report.measured = grid_sup;
  report.pass = grid_sup < eps;
  report.detail = "cells=" + std::to_string(cells);
  return {std::move(beta), std::move(report)};
}

std::pair<Curve, ApproxReport> lp_simple_approx(const Curve& c, std::size_t qi, double p,
                                                double eps, const QuadOptions& opts) {
  if (eps <= 0) throw std::invalid_argument("lp_simple_approx: eps must be > 0");
  if (p < 1) throw std::invalid_argument("lp_simple_approx: p must be >= 1");
  ApproxReport report;
  report.operation = "lp_simple_approx";
  report.seminorm = c.space.seminorm_name(qi);
  report.p = p;
  report.param = eps;
  report.claimed_bound = eps;

  if (c.is_simple()) {  // already a step curve: distance 0
    report.measured = 0;
    report.pass = true;
    report.detail = "fixed point";
    return {c, std::move(report)};
  }

  double tail_budget = std::pow(eps, p) / 2;
  double delta = abs_continuity_delta(c, qi, p, tail_budget, opts);
  double uniform_budget = eps / std::pow(2.0, 1.0 / p);
  Rat cert_eps = std::min(rat_from_double(delta), rat_from_double(uniform_budget));
  LusinCertificate cert = continuity_certificate(c, cert_eps);

  auto [beta, inner] = uniform_simple_approx(c, cert, qi, uniform_budget);
  QuadratureResult dist = lp_distance(c, beta, qi, p, opts);
  report.measured = dist.value;
  report.pass = dist.value <= eps + dist.value_error_bound(p);
  report.detail = inner.detail + ";sup=" + double_str(inner.measured);
  return {std::move(beta), std::move(report)};
}

PWAffine urysohn_1d(const CompactSet& K, const IntervalSet& U) {
  if (K.is_empty()) return PWAffine::constant(0.0);

  PWAffine f;
  f.breaks.push_back(kZero);
  auto push = [&f](const Rat& hi, double c0, double c1) {
    if (hi <= f.breaks.back()) return;
    f.breaks.push_back(hi);
    f.c0.push_back(c0);
    f.c1.push_back(c1);
  };

  std::size_t ki = 0;
  for (const auto& up : U.pieces) {
    // K pieces inside this U piece, U read as an open subset of [0,1]
    std::size_t first = ki;
    while (ki < K.pieces.size() && K.pieces[ki].lo < up.hi) {
      const auto& kp = K.pieces[ki];
      bool left_ok = kp.lo > up.lo || (up.lo == kZero && kp.lo == kZero);
      bool right_ok = kp.hi < up.hi || (up.hi == kOne && kp.hi == kOne);
      if (!left_ok || !right_ok)
        throw std::invalid_argument(
            "urysohn_1d: compact piece [" + rat_str(kp.lo) + "," + rat_str(kp.hi) +
            "] has zero margin inside [" + rat_str(up.lo) + "," + rat_str(up.hi) + ")");
      ++ki;
    }
    if (ki == first) continue;  // no compact mass here: stay 0

    const Rat& hull_lo = K.pieces[first].lo;
    const Rat& hull_hi = K.pieces[ki - 1].hi;
    push(up.lo, 0.0, 0.0);
    if (hull_lo > up.lo) {
      // ramp 0 -> 1 across [up.lo, hull_lo]
      double a = rat_to_double(up.lo), u = rat_to_double(hull_lo);
      double slope = 1.0 / (u - a);
      push(hull_lo, -a * slope, slope);
    }
    if (hull_hi > hull_lo) push(hull_hi, 1.0, 0.0);
    if (hull_hi < up.hi) {
      // ramp 1 -> 0 across [hull_hi, up.hi]
      double v = rat_to_double(hull_hi), b = rat_to_double(up.hi);
      double slope = -1.0 / (b - v);
      push(up.hi, 1.0 - v * slope, slope);
    }
  }
  if (ki < K.pieces.size())
    throw std::invalid_argument("urysohn_1d: compact not contained in the open set");
  push(kOne, 0.0, 0.0);
  if (f.breaks.size() == 1) return PWAffine::constant(0.0);
  return f;
}

std::pair<Curve, std::vector<ApproxReport>> continuous_approx_char(
    const Vector& y0, const IntervalSet& a, long n, double p, const SpaceModel& space,
    const QuadOptions& opts) {
  if (n < 1) throw std::invalid_argument("continuous_approx_char: n must be >= 1");
  if (p < 1) throw std::invalid_argument("continuous_approx_char: p must be >= 1");

  Curve alpha = a.is_empty()
                    ? make_constant(space, Vector::zero(space.kind))
                    : [&] {
                        Rat budget = rat(1, 2 * n);
                        CompactSet inner = inner_compact(a, budget);
                        IntervalSet outer = outer_open(a, budget);
                        return make_shape(space, urysohn_1d(inner, outer), y0);
                      }();
  Curve target = a.is_empty() ? make_constant(space, Vector::zero(space.kind))
                              : make_simple(space, {{y0, a}});

  std::vector<ApproxReport> reports;
  for (std::size_t qi = 0; qi < space.seminorm_count(); ++qi) {
    QuadratureResult dist = lp_distance(alpha, target, qi, p, opts);
    double qy0 = seminorm_eval(space, qi, y0);
    ApproxReport rep;
    rep.operation = "continuous_approx_char";
    rep.seminorm = space.seminorm_name(qi);
    rep.p = p;
    rep.param = static_cast<double>(n);
    rep.claimed_bound = std::pow(qy0, p) / static_cast<double>(n);
    rep.measured = dist.raw_integral;
    rep.pass = rep.measured <= rep.claimed_bound + dist.abs_error_bound + 1e-12;
    reports.push_back(std::move(rep));
  }
  return {std::move(alpha), std::move(reports)};
}

Curve dyadic_average(const Curve& c, int level, const QuadOptions& opts) {
  if (level < 0 || level > 20)
    throw std::invalid_argument("dyadic_average: level out of range [0,20]");
  long cells = 1L << level;
  Rat width = rat(1, cells);
  std::vector<SimpleCurve::Piece> pieces;
  for (long j = 0; j < cells; ++j) {
    Rat lo = rat(j) * width;
    IntervalSet cell = IntervalSet::interval(lo, lo + width);
    Vector avg;
    try {
      avg = vec_scale(rat(cells), weak_integral(c, cell, opts));
    } catch (const QuadratureError& e) {
      throw QuadratureError("dyadic_average: cell " + std::to_string(j) + " of 2^" +
                            std::to_string(level) + ": " + e.what());
    }
    if (!avg.is_zero()) pieces.push_back({std::move(avg), std::move(cell)});
  }
  return make_simple(c.space, std::move(pieces));
}

namespace {

struct PairSup {
  double sup = 0;
  Rat argmax;
};

PairSup grid_pair_sup(const std::vector<Vector>& vm, const std::vector<Vector>& vn,
                      const std::vector<Rat>& grid, const SpaceModel& space,
                      std::size_t qi) {
  PairSup out;
  out.argmax = grid.empty() ? rat(0) : grid.front();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = seminorm_eval(space, qi, vec_sub(vm[i], vn[i]));
    if (v > out.sup) {
      out.sup = v;
      out.argmax = grid[i];
    }
  }
  return out;
}

}  // namespace

LimitResult uniform_limit_certificate(std::span<const Curve> seq,
                                      std::span<const double> tails,
                                      std::span<const std::size_t> qset, int depth,
                                      const Rat& grid_step) {
  if (seq.empty()) throw std::invalid_argument("uniform_limit_certificate: empty sequence");
  if (seq.size() > 32)
    throw std::invalid_argument("uniform_limit_certificate: sequence too long");
  for (const auto& c : seq)
    if (!c.is_simple())
      throw std::invalid_argument("uniform_limit_certificate: members must be simple");
  int levels = std::min<int>(depth, static_cast<int>(tails.size()));
  if (levels < 1) throw std::invalid_argument("uniform_limit_certificate: no levels");

  const SpaceModel& space = seq[0].space;
  std::size_t M = seq.size();
  LimitResult result{make_constant(space, Vector::zero(space.kind)), full_certificate(), {}};
  std::vector<std::size_t> tail_of_level;
  std::vector<CompactSet> compacts;

  for (int k = 1; k <= levels; ++k) {
    Rat budget = rat(1, k);
    std::vector<LusinCertificate> certs;
    Rat scale = rat(1, 2);
    for (std::size_t n = 0; n < M; ++n) {
      certs.push_back(continuity_certificate(seq[n], budget * scale));
      scale /= 2;
    }
    LusinCertificate hk = intersect_certificates(certs);
    std::vector<Rat> grid = compact_grid(hk.K, grid_step);
    std::vector<std::vector<Vector>> values(M);
    for (std::size_t n = 0; n < M; ++n) {
      values[n].reserve(grid.size());
      for (const auto& t : grid) values[n].push_back(seq[n].eval(t));
    }

    double eps_k = tails[static_cast<std::size_t>(k - 1)];
    // smallest tail with >= 2 members where every pair stays below eps_k
    std::size_t chosen = 0;
    double chosen_sup = 0;
    CauchyWitness worst;
    for (std::size_t N = 1; N + 1 <= M; ++N) {
      double tail_sup = 0;
      CauchyWitness w;
      for (std::size_t m = N; m <= M; ++m) {
        for (std::size_t n = m + 1; n <= M; ++n) {
          for (std::size_t qi : qset) {
            PairSup s = grid_pair_sup(values[m - 1], values[n - 1], grid, space, qi);
            if (s.sup > tail_sup) {
              tail_sup = s.sup;
              w = CauchyWitness{m, n, s.argmax, s.sup};
            }
          }
        }
      }
      if (tail_sup < eps_k) {
        chosen = N;
        chosen_sup = tail_sup;
        break;
      }
      if (N + 2 > M) worst = w;  // deepest usable tail still fails
    }
    if (chosen == 0) {
      throw CauchyFailure(
          "uniform Cauchy check failed at level " + std::to_string(k) + ": members " +
              std::to_string(worst.m) + "," + std::to_string(worst.n) + " differ by " +
              double_str(worst.gap) + " at t=" + rat_str(worst.t),
          worst);
    }
    if (hk.complement_measure() >= budget)
      throw std::logic_error("uniform_limit_certificate: compact bound violated");
    result.levels.push_back(LimitLevel{k, eps_k, chosen, chosen_sup,
                                       hk.complement_measure()});
    tail_of_level.push_back(chosen);
    compacts.push_back(hk.K);
  }

  // patch: beta_{N_k} on H_k, deeper levels taking precedence on overlaps
  // (their tails carry the tighter bound)
  std::vector<SimpleCurve::Piece> pieces;
  IntervalSet used;
  for (std::size_t idx = compacts.size(); idx-- > 0;) {
    IntervalSet region = set_diff(to_interval_set(compacts[idx]), used);
    used = set_union(used, region);
    const SimpleCurve& member = seq[tail_of_level[idx] - 1].as_simple();
    for (const auto& piece : member.pieces) {
      IntervalSet sub = set_intersect(piece.set, region);
      if (!sub.is_empty()) pieces.push_back({piece.value, std::move(sub)});
    }
  }
  result.limit = make_simple(space, std::move(pieces));
  result.cert.K = compacts.back();
  result.cert.eps = rat(1, levels);
  result.cert.evidence = LusinCertificate::Evidence::GridChecked;
  return result;
}

}  // namespace lcurve
