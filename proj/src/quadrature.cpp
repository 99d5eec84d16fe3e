#include "lcurve/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lcurve {

namespace {

const Rat kZero = rat(0);
const Rat kOne = rat(1);

// Direct single-pass step profile of a simple curve under a scalar view
// of its piece values (coordinate or point evaluation).
PWAffine step_trace(const SimpleCurve& c,
                    const std::function<double(const Vector&)>& view) {
  struct Seg {
    Rat lo, hi;
    double v;
  };
  std::vector<Seg> segs;
  for (const auto& piece : c.pieces) {
    double v = view(piece.value);
    for (const auto& p : piece.set.pieces) segs.push_back({p.lo, p.hi, v});
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
  PWAffine f;
  f.breaks.push_back(kZero);
  auto push = [&f](const Rat& hi, double v) {
    if (hi <= f.breaks.back()) return;
    f.breaks.push_back(hi);
    f.c0.push_back(v);
    f.c1.push_back(0.0);
  };
  for (const auto& s : segs) {
    push(s.lo, 0.0);
    push(s.hi, s.v);
  }
  push(kOne, 0.0);
  return f;
}

// max{1 - steep*|x - t|, 0} as a function of t, clipped to [0,1]
PWAffine hat_trace(const Rat& x, const Rat& steep) {
  Rat radius = kOne / steep;
  Rat left = x - radius, right = x + radius;
  double xd = rat_to_double(x), sd = rat_to_double(steep);
  PWAffine f;
  f.breaks.push_back(kZero);
  auto push = [&f](Rat hi, double c0, double c1) {
    hi = std::min(hi, kOne);
    if (hi <= f.breaks.back()) return;
    f.breaks.push_back(hi);
    f.c0.push_back(c0);
    f.c1.push_back(c1);
  };
  push(left, 0.0, 0.0);
  // rising flank: 1 - steep*(x - t)
  push(x, 1.0 - sd * xd, sd);
  // falling flank: 1 - steep*(t - x)
  push(right, 1.0 + sd * xd, -sd);
  push(kOne, 0.0, 0.0);
  return f;
}

struct TraceVisitor {
  const SpaceModel& space;
  std::size_t comp;

  std::optional<PWAffine> operator()(const SimpleCurve& c) const {
    if (space.kind == SpaceKind::FiniteDim)
      return step_trace(c, [this](const Vector& v) { return v.coords[comp]; });
    const Rat& x = space.eval_points[comp];
    return step_trace(
        c, [&x](const Vector& v) { return rat_to_double(vec_eval_exact(v, x)); });
  }
  std::optional<PWAffine> operator()(const ShapeCurve& c) const {
    double scale = space.kind == SpaceKind::FiniteDim
                       ? c.direction.coords[comp]
                       : rat_to_double(
                             vec_eval_exact(c.direction, space.eval_points[comp]));
    return pw_scale(scale, c.shape);
  }
  std::optional<PWAffine> operator()(const HatPathCurve& c) const {
    return hat_trace(space.eval_points[comp], c.steep);
  }
  std::optional<PWAffine> operator()(const DeltaPathCurve&) const {
    return PWAffine::constant(0.0);  // chi_{{x}} vanishes a.e.
  }
  std::optional<PWAffine> operator()(const GeneralCurve&) const { return std::nullopt; }
};

}  // namespace

std::optional<PWAffine> component_trace(const Curve& c, std::size_t comp) {
  std::size_t count = c.space.kind == SpaceKind::FiniteDim
                          ? static_cast<std::size_t>(c.space.dim)
                          : c.space.eval_points.size();
  if (comp >= count) throw std::out_of_range("component_trace: bad component");
  return std::visit(TraceVisitor{c.space, comp}, c.rep);
}

std::optional<PWAffine> seminorm_profile(std::span<const CurveTerm> terms,
                                         std::size_t qi) {
  if (terms.empty()) return PWAffine::constant(0.0);
  const SpaceModel& space = terms[0].curve->space;
  for (const auto& t : terms)
    if (!t.curve->space.compatible(space))
      throw std::invalid_argument("seminorm_profile: incompatible spaces");
  if (qi >= space.seminorm_count())
    throw std::out_of_range("seminorm_profile: unknown seminorm index");

  auto combined_trace = [&](std::size_t comp) -> std::optional<PWAffine> {
    PWAffine sum = PWAffine::constant(0.0);
    for (const auto& t : terms) {
      auto trace = component_trace(*t.curve, comp);
      if (!trace) return std::nullopt;
      sum = pw_add(sum, pw_scale(rat_to_double(t.coef), *trace));
    }
    return sum;
  };

  if (space.kind == SpaceKind::Pointwise) {
    auto trace = combined_trace(qi);
    if (!trace) return std::nullopt;
    return pw_abs(*trace);
  }
  const auto& weights = space.seminorms[qi].weights;
  PWAffine profile = PWAffine::constant(0.0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0.0) continue;
    auto trace = combined_trace(j);
    if (!trace) return std::nullopt;
    profile = pw_add(profile, pw_scale(weights[j], pw_abs(*trace)));
  }
  return profile;
}

namespace {

struct AdaptiveState {
  const std::function<double(double)>& f;
  long max_cells;
  long cells = 0;
  double err = 0;

  double simpson(double a, double fa, double m, double fm, double b, double fb) {
    (void)m;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double run(double a, double fa, double b, double fb, double whole, double fm,
             double tol_here, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    cells += 2;
    if (cells > max_cells)
      throw QuadratureError("adaptive quadrature: cell cap exceeded");
    double left = simpson(a, fa, lm, flm, m, fm);
    double right = simpson(m, fm, rm, frm, b, fb);
    double delta = left + right - whole;
    if (depth >= 48 || std::abs(delta) <= 15.0 * tol_here) {
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return run(a, fa, m, fm, left, flm, tol_here / 2, depth + 1) +
           run(m, fm, b, fb, right, frm, tol_here / 2, depth + 1);
  }

  double integrate(double a, double b, double tol_here) {
    double fa = f(a), fb = f(b), m = (a + b) / 2, fm = f(m);
    cells += 3;
    double whole = simpson(a, fa, m, fm, b, fb);
    return run(a, fa, b, fb, whole, fm, tol_here, 0);
  }
};

struct AdaptiveOutcome {
  double value = 0;
  double err = 0;
  long cells = 0;
};

AdaptiveOutcome adaptive_integral(const std::function<double(double)>& f,
                                  std::vector<Rat> mandatory, const IntervalSet& over,
                                  const QuadOptions& opts) {
  // split at declared kinks; each smooth span gets a share of the budget
  std::vector<Rat> cuts{kZero, kOne};
  for (auto& r : mandatory)
    if (r > kZero && r < kOne) cuts.push_back(r);
  for (const auto& p : over.pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<double, double>> spans;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    if (!over.contains(mid)) continue;
    spans.push_back({rat_to_double(cuts[i]), rat_to_double(cuts[i + 1])});
  }
  AdaptiveOutcome out;
  if (spans.empty()) return out;
  AdaptiveState state{f, opts.max_cells};
  for (auto& [a, b] : spans)
    if (a < b) out.value += state.integrate(a, b, opts.abs_tol / spans.size());
  out.err = state.err;
  out.cells = state.cells;
  return out;
}

Vector combo_eval(std::span<const CurveTerm> terms, double t) {
  const SpaceModel& space = terms[0].curve->space;
  Vector sum = Vector::zero(space.kind);
  if (space.kind == SpaceKind::FiniteDim)
    sum.coords.assign(static_cast<std::size_t>(space.dim), 0.0);
  for (const auto& term : terms)
    sum = vec_add(sum, vec_scale(term.coef, term.curve->eval(t)));
  return sum;
}

std::vector<Rat> combo_breakpoints(std::span<const CurveTerm> terms) {
  std::vector<Rat> bp;
  for (const auto& t : terms) {
    auto b = t.curve->breakpoints();
    bp.insert(bp.end(), b.begin(), b.end());
    // hat kinks relative to the active evaluation points
    if (const auto* hat = std::get_if<HatPathCurve>(&t.curve->rep)) {
      Rat radius = kOne / hat->steep;
      for (const auto& x : t.curve->space.eval_points) {
        bp.push_back(x - radius);
        bp.push_back(x);
        bp.push_back(x + radius);
      }
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace

double QuadratureResult::value_error_bound(double p) const {
  if (abs_error_bound == 0) return 0;
  double up = std::pow(raw_integral + abs_error_bound, 1.0 / p);
  double down = std::pow(std::max(0.0, raw_integral - abs_error_bound), 1.0 / p);
  return std::max(up - value, value - down);
}

QuadratureResult lp_combo_norm(std::span<const CurveTerm> terms, std::size_t qi,
                               double p, const QuadOptions& opts) {
  if (p < 1) throw std::invalid_argument("lp_combo_norm: p must be >= 1");
  QuadratureResult res;
  if (auto profile = seminorm_profile(terms, qi)) {
    res.raw_integral = pw_integral_pow(*profile, p);
    res.abs_error_bound = 0;
    res.cells = static_cast<long>(profile->segments());
    res.method = QuadratureResult::Method::ExactPiecewise;
  } else {
    const SpaceModel& space = terms[0].curve->space;
    auto f = [&](double t) {
      return std::pow(seminorm_eval(space, qi, combo_eval(terms, t)), p);
    };
    auto out = adaptive_integral(f, combo_breakpoints(terms), IntervalSet::full(), opts);
    res.raw_integral = out.value;
    res.abs_error_bound = out.err;
    res.cells = out.cells;
    res.method = QuadratureResult::Method::Adaptive;
  }
  res.raw_integral = std::max(0.0, res.raw_integral);
  res.value = std::pow(res.raw_integral, 1.0 / p);
  return res;
}

QuadratureResult lp_seminorm(const Curve& c, std::size_t qi, double p,
                             const QuadOptions& opts) {
  CurveTerm term{rat(1), &c};
  return lp_combo_norm(std::span<const CurveTerm>(&term, 1), qi, p, opts);
}

QuadratureResult lp_distance(const Curve& a, const Curve& b, std::size_t qi, double p,
                             const QuadOptions& opts) {
  std::array<CurveTerm, 2> terms{CurveTerm{rat(1), &a}, CurveTerm{rat(-1), &b}};
  return lp_combo_norm(terms, qi, p, opts);
}

Vector weak_integral(const Curve& c, const IntervalSet& over, const QuadOptions& opts) {
  const SpaceModel& space = c.space;
  if (c.is_simple()) {
    Vector z = Vector::zero(space.kind);
    if (space.kind == SpaceKind::FiniteDim)
      z.coords.assign(static_cast<std::size_t>(space.dim), 0.0);
    for (const auto& piece : c.as_simple().pieces) {
      Rat mass = set_intersect(piece.set, over).measure();
      if (mass != 0) z = vec_add(z, vec_scale(mass, piece.value));
    }
    return z;
  }
  std::size_t comps = space.kind == SpaceKind::FiniteDim
                          ? static_cast<std::size_t>(space.dim)
                          : space.eval_points.size();
  std::vector<double> moments(comps, 0.0);
  for (std::size_t j = 0; j < comps; ++j) {
    if (auto trace = component_trace(c, j)) {
      moments[j] = pw_integral_over(*trace, over);
    } else {
      auto f = [&](double t) {
        const Vector v = c.eval(t);
        return space.kind == SpaceKind::FiniteDim
                   ? v.coords[j]
                   : rat_to_double(vec_eval_exact(v, space.eval_points[j]));
      };
      CurveTerm self{rat(1), &c};
      moments[j] =
          adaptive_integral(f, combo_breakpoints(std::span<const CurveTerm>(&self, 1)),
                            over, opts)
              .value;
    }
  }
  if (space.kind == SpaceKind::FiniteDim) return Vector::fin(std::move(moments));
  Vector z = Vector::zero(SpaceKind::Pointwise);
  for (std::size_t j = 0; j < comps; ++j)
    if (moments[j] != 0.0)
      z = vec_add(z, vec_scale(rat_from_double(moments[j]),
                               Vector::ind(space.eval_points[j])));
  return z;
}

double weak_integral_residual(const Curve& c, const IntervalSet& over, const Vector& z,
                              const QuadOptions& opts) {
  double worst = 0;
  CurveTerm self{rat(1), &c};
  auto mandatory = combo_breakpoints(std::span<const CurveTerm>(&self, 1));
  // the null-set coordinates of the delta path converge slowly; the
  // re-integration runs a decade tighter than the claimed residual
  QuadOptions tight = opts;
  tight.abs_tol = std::min(opts.abs_tol, 1e-11);
  if (c.space.kind == SpaceKind::Pointwise)
    for (const auto& x : c.space.eval_points)
      if (x > kZero && x < kOne) mandatory.push_back(x);
  for (const auto& f : generating_functionals(c.space)) {
    auto g = [&](double t) { return functional_apply(f, c.eval(t)); };
    auto out = adaptive_integral(g, mandatory, over, tight);
    worst = std::max(worst, std::abs(functional_apply(f, z) - out.value));
  }
  return worst;
}

RunningIntegral running_integral(const Curve& c, const Rat& h, const QuadOptions& opts) {
  if (h <= 0) throw std::invalid_argument("running_integral: step must be > 0");
  RunningIntegral out;
  Rat t = 0;
  while (true) {
    out.ts.push_back(t);
    out.values.push_back(weak_integral(c, IntervalSet::interval(kZero, t), opts));
    if (t >= 1) break;
    t = rat_min(kOne, t + h);
  }
  out.modulus.assign(c.space.seminorm_count(), 0.0);
  for (std::size_t qi = 0; qi < out.modulus.size(); ++qi)
    for (std::size_t i = 0; i + 1 < out.values.size(); ++i)
      out.modulus[qi] =
          std::max(out.modulus[qi],
                   seminorm_eval(c.space, qi, vec_sub(out.values[i + 1], out.values[i])));
  return out;
}

SeminormIntegralCheck hb_inequality_check(const Curve& c, std::size_t qi,
                                          const QuadOptions& opts) {
  SeminormIntegralCheck check;
  Vector z = weak_integral(c, IntervalSet::full(), opts);
  check.lhs = seminorm_eval(c.space, qi, z);
  QuadratureResult rhs = lp_seminorm(c, qi, 1.0, opts);
  check.rhs = rhs.value;
  // adaptive moments contribute tol per weighted coordinate of the lhs;
  // 1e-12 absorbs double rounding on the exact branches
  double moment_err = 0.0;
  if (rhs.method == QuadratureResult::Method::Adaptive) {
    double weight_sum = 1.0;
    if (c.space.kind == SpaceKind::FiniteDim) {
      weight_sum = 0.0;
      for (double w : c.space.seminorms[qi].weights) weight_sum += w;
    }
    moment_err = opts.abs_tol * weight_sum;
  }
  check.error_budget = rhs.abs_error_bound + moment_err + 1e-12;
  check.pass = check.lhs <= check.rhs + check.error_budget;
  return check;
}

double abs_continuity_delta(const Curve& c, std::size_t qi, double p, double budget,
                            const QuadOptions& opts) {
  if (budget <= 0) throw std::invalid_argument("abs_continuity_delta: budget must be > 0");
  CurveTerm self{rat(1), &c};
  auto profile = seminorm_profile(std::span<const CurveTerm>(&self, 1), qi);
  double sup;
  if (profile) {
    sup = pw_sup_abs(*profile);
  } else if (auto lip = c.lipschitz(qi)) {
    // certified sup from a Lipschitz bound over a coarse grid
    double step = 1.0 / 512, worst = 0;
    for (double t = 0; t <= 1.0; t += step)
      worst = std::max(worst, seminorm_eval(c.space, qi, c.eval(std::min(t, 1.0))));
    sup = worst + *lip * step;
  } else {
    throw std::domain_error("abs_continuity_delta: no certified integrand profile");
  }
  if (sup == 0.0) return 1.0;
  double floor_delta = std::min(1.0, budget / std::pow(sup, p));

  if (!profile) return floor_delta;

  // enlarge via the exact worst-mass function: the worst set of measure
  // delta is a superlevel set {profile >= cut}
  auto superlevel = [&](double cut) {
    std::vector<IntervalSet::Piece> ps;
    for (std::size_t i = 0; i < profile->segments(); ++i) {
      const Rat lo = profile->breaks[i];
      const Rat hi = profile->breaks[i + 1];
      double c0 = profile->c0[i], c1 = profile->c1[i];
      double lod = rat_to_double(lo), hid = rat_to_double(hi);
      double vlo = c0 + c1 * lod, vhi = c0 + c1 * hid;
      if (vlo < cut && vhi < cut) continue;
      if (vlo >= cut && vhi >= cut) {
        ps.push_back({lo, hi});
        continue;
      }
      Rat split = rat_from_double((cut - c0) / c1);
      split = std::max(lo, std::min(hi, split));
      if (vlo >= cut)
        ps.push_back({lo, split});
      else
        ps.push_back({split, hi});
    }
    return IntervalSet::from_pieces(std::move(ps));
  };
  auto worst_mass = [&](double delta) {
    // threshold with lambda({profile >= cut}) ~ delta, then fill the
    // remaining measure at level cut
    double lo = 0, hi = sup;
    for (int it = 0; it < 60; ++it) {
      double cut = (lo + hi) / 2;
      if (rat_to_double(superlevel(cut).measure()) > delta)
        lo = cut;
      else
        hi = cut;
    }
    IntervalSet set = superlevel(hi);
    double mass = pw_integral_pow_over(*profile, p, set);
    double slack = delta - rat_to_double(set.measure());
    if (slack > 0) mass += slack * std::pow(hi, p);
    return mass;
  };
  double margin = budget * (1 - 1e-9);
  if (worst_mass(1.0) <= margin) return 1.0;
  double lo = floor_delta, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    double mid = (lo + hi) / 2;
    if (worst_mass(mid) <= margin)
      lo = mid;
    else
      hi = mid;
  }
  (void)opts;
  return std::max(floor_delta, lo);
}

PMonotonicity p_monotonicity_check(const Curve& c, std::size_t qi, double p, double r,
                                   const QuadOptions& opts) {
  if (!(1.0 <= p && p <= r))
    throw std::invalid_argument("p_monotonicity_check: need 1 <= p <= r");
  PMonotonicity out;
  QuadratureResult np = lp_seminorm(c, qi, p, opts);
  QuadratureResult nr = lp_seminorm(c, qi, r, opts);
  out.norm_p = np.value;
  out.norm_r = nr.value;
  out.error_budget = np.value_error_bound(p) + nr.value_error_bound(r) + 1e-12;
  out.pass = out.norm_p <= out.norm_r + out.error_budget;
  return out;
}

}  // namespace lcurve
