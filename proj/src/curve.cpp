#include "lcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcurve {

namespace {

const Rat kZero = rat(0);
const Rat kOne = rat(1);

void check_domain(const Rat& t) {
  if (t < kZero || t > kOne) throw std::domain_error("curve eval: t outside [0,1]");
}

Vector zero_of(const SpaceModel& space) {
  Vector v = Vector::zero(space.kind);
  if (space.kind == SpaceKind::FiniteDim)
    v.coords.assign(static_cast<std::size_t>(space.dim), 0.0);
  return v;
}

struct EvalVisitor {
  const SpaceModel& space;
  const Rat& t;

  Vector operator()(const SimpleCurve& c) const {
    for (const auto& atom : c.atoms)
      if (atom.at == t) return atom.value;
    for (const auto& piece : c.pieces)
      if (piece.set.contains(t)) return piece.value;
    return zero_of(space);
  }
  Vector operator()(const ShapeCurve& c) const {
    return vec_scale(rat_from_double(c.shape.eval(t)), c.direction);
  }
  Vector operator()(const HatPathCurve& c) const { return Vector::hat(t, c.steep); }
  Vector operator()(const DeltaPathCurve&) const { return Vector::ind(t); }
  Vector operator()(const GeneralCurve& c) const {
    return c.evaluator(rat_to_double(t));
  }
};

}  // namespace

Vector Curve::eval(const Rat& t) const {
  check_domain(t);
  return std::visit(EvalVisitor{space, t}, rep);
}

Vector Curve::eval(double t) const { return eval(rat_from_double(t)); }

std::vector<Rat> Curve::breakpoints() const {
  std::vector<Rat> bp;
  if (const auto* s = std::get_if<SimpleCurve>(&rep)) {
    for (const auto& piece : s->pieces)
      for (const auto& p : piece.set.pieces) {
        bp.push_back(p.lo);
        bp.push_back(p.hi);
      }
  } else if (const auto* sh = std::get_if<ShapeCurve>(&rep)) {
    bp = sh->shape.breaks;
  } else if (const auto* g = std::get_if<GeneralCurve>(&rep)) {
    bp = g->breakpoints;
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

std::optional<double> Curve::lipschitz(std::size_t qi) const {
  if (const auto* sh = std::get_if<ShapeCurve>(&rep)) {
    double max_slope = 0;
    for (double s : sh->shape.c1) max_slope = std::max(max_slope, std::abs(s));
    return max_slope * seminorm_eval(space, qi, sh->direction);
  }
  if (std::holds_alternative<HatPathCurve>(rep)) {
    // |Hat(t,n)(x) - Hat(s,n)(x)| <= n|t - s| for every x
    return rat_to_double(std::get<HatPathCurve>(rep).steep);
  }
  if (const auto* s = std::get_if<SimpleCurve>(&rep)) {
    // constant curves only; step jumps are not Lipschitz
    bool constant = s->pieces.empty() ||
                    (s->pieces.size() == 1 && s->pieces[0].set == IntervalSet::full() &&
                     s->atoms.empty());
    if (constant) return 0.0;
    return std::nullopt;
  }
  if (const auto* g = std::get_if<GeneralCurve>(&rep)) {
    auto it = g->lip.find(qi);
    if (it != g->lip.end()) return it->second;
  }
  return std::nullopt;
}

bool Curve::globally_continuous() const {
  if (std::holds_alternative<ShapeCurve>(rep)) return true;
  if (std::holds_alternative<HatPathCurve>(rep)) return true;
  if (const auto* s = std::get_if<SimpleCurve>(&rep))
    return s->atoms.empty() &&
           (s->pieces.empty() ||
            (s->pieces.size() == 1 && s->pieces[0].set == IntervalSet::full()));
  return false;
}

namespace {

void check_vector_kind(const SpaceModel& space, const Vector& v, const char* where) {
  if (v.kind != space.kind)
    throw std::invalid_argument(std::string(where) + ": vector/space kind mismatch");
  if (space.kind == SpaceKind::FiniteDim &&
      v.coords.size() != static_cast<std::size_t>(space.dim))
    throw std::invalid_argument(std::string(where) + ": vector dimension mismatch");
}

}  // namespace

Curve make_simple(SpaceModel space, std::vector<SimpleCurve::Piece> pieces,
                  std::vector<SimpleCurve::Atom> atoms) {
  // pieces must be pairwise disjoint
  std::vector<IntervalSet::Piece> all;
  Rat total = 0;
  for (const auto& piece : pieces) {
    check_vector_kind(space, piece.value, "make_simple");
    for (const auto& p : piece.set.pieces) all.push_back(p);
    total += piece.set.measure();
  }
  if (IntervalSet::from_pieces(all).measure() != total)
    throw std::invalid_argument("make_simple: overlapping pieces");
  for (const auto& atom : atoms) {
    check_vector_kind(space, atom.value, "make_simple");
    check_domain(atom.at);
  }
  Curve c;
  c.space = std::move(space);
  c.rep = SimpleCurve{std::move(pieces), std::move(atoms)};
  return c;
}

Curve make_constant(SpaceModel space, Vector value) {
  if (value.kind != space.kind)
    throw std::invalid_argument("make_constant: vector/space kind mismatch");
  if (value.is_zero()) return make_simple(std::move(space), {});
  check_vector_kind(space, value, "make_constant");
  std::vector<SimpleCurve::Piece> pieces{{std::move(value), IntervalSet::full()}};
  return make_simple(std::move(space), std::move(pieces));
}

Curve make_shape(SpaceModel space, PWAffine shape, Vector direction) {
  check_vector_kind(space, direction, "make_shape");
  if (!shape.valid()) throw std::invalid_argument("make_shape: malformed shape");
  Curve c;
  c.space = std::move(space);
  c.rep = ShapeCurve{std::move(shape), std::move(direction)};
  return c;
}

Curve make_hat_path(SpaceModel space, const Rat& steep) {
  if (space.kind != SpaceKind::Pointwise)
    throw std::invalid_argument("make_hat_path: pointwise space required");
  if (steep <= 0) throw std::invalid_argument("make_hat_path: steepness must be > 0");
  Curve c;
  c.space = std::move(space);
  c.rep = HatPathCurve{steep};
  return c;
}

Curve make_delta_path(SpaceModel space) {
  if (space.kind != SpaceKind::Pointwise)
    throw std::invalid_argument("make_delta_path: pointwise space required");
  Curve c;
  c.space = std::move(space);
  c.rep = DeltaPathCurve{};
  return c;
}

Curve make_general(SpaceModel space, std::function<Vector(double)> evaluator,
                   std::vector<Rat> breakpoints, std::map<std::size_t, double> lip,
                   std::string name) {
  Curve c;
  c.space = std::move(space);
  c.rep = GeneralCurve{std::move(evaluator), std::move(breakpoints), std::move(lip),
                       std::move(name)};
  return c;
}

double delta_separation(const Rat& s, const Rat& s2) {
  if (s == s2) throw std::invalid_argument("delta_separation: points must differ");
  Rat v = vec_eval_exact(vec_sub(Vector::ind(s), Vector::ind(s2)), s);
  return rat_to_double(abs(v));
}

double hat_cauchy_gap(long n, long m, const Rat& x) {
  if (n <= 0 || m < 2 * n) throw std::invalid_argument("hat_cauchy_gap: need m >= 2n >= 2");
  Rat t = x + rat(1, 2 * n);
  if (!(t > 0 && t < 1))
    throw std::invalid_argument("hat_cauchy_gap: x + 1/(2n) must lie in (0,1)");
  Rat at_x = vec_eval_exact(vec_sub(Vector::hat(t, rat(m)), Vector::hat(t, rat(n))), x);
  Rat gap = abs(at_x);
  Rat expected_m = rat_max(rat(0), rat(1) - rat(m, 2 * n));
  Rat expected = abs(expected_m - rat(1, 2));
  if (gap != expected) throw std::logic_error("hat_cauchy_gap: formula mismatch");
  return rat_to_double(gap);
}

Curve hat_discretization(SpaceModel space, const Rat& steep, const Rat& mesh) {
  if (mesh <= 0 || mesh > 1)
    throw std::invalid_argument("hat_discretization: mesh must be in (0,1]");
  std::vector<SimpleCurve::Piece> pieces;
  Rat lo = 0;
  while (lo < 1) {
    Rat hi = rat_min(kOne, lo + mesh);
    pieces.push_back({Vector::hat(lo, steep), IntervalSet::interval(lo, hi)});
    lo = hi;
  }
  return make_simple(std::move(space), std::move(pieces));
}

FiniteCofinite FiniteCofinite::intersect(const FiniteCofinite& other) const {
  auto member = [](const std::vector<Rat>& v, const Rat& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  FiniteCofinite out;
  if (!cofinite && !other.cofinite) {
    out.cofinite = false;
    for (const auto& p : points)
      if (member(other.points, p)) out.points.push_back(p);
  } else if (cofinite && other.cofinite) {
    out.cofinite = true;
    out.points = points;
    for (const auto& p : other.points)
      if (!member(out.points, p)) out.points.push_back(p);
    std::sort(out.points.begin(), out.points.end());
  } else {
    const FiniteCofinite& fin = cofinite ? other : *this;
    const FiniteCofinite& cof = cofinite ? *this : other;
    out.cofinite = false;
    for (const auto& p : fin.points)
      if (!member(cof.points, p)) out.points.push_back(p);
  }
  return out;
}

std::string FiniteCofinite::str() const {
  std::string body = "{";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) body += ",";
    body += rat_str(points[i]);
  }
  body += "}";
  if (cofinite) return "[0,1]\\" + body;
  return body;
}

FiniteCofinite delta_preimage(const Rat& x, double u_lo, double u_hi) {
  bool zero_in = u_lo < 0.0 && 0.0 < u_hi;
  bool one_in = u_lo < 1.0 && 1.0 < u_hi;
  bool x_in_domain = x >= 0 && x <= 1;
  if (zero_in && one_in) return FiniteCofinite::all();
  if (zero_in) {
    // every t != x; remove x only when it lies in [0,1]
    FiniteCofinite out = FiniteCofinite::all();
    if (x_in_domain) out.points.push_back(x);
    return out;
  }
  if (one_in) {
    FiniteCofinite out = FiniteCofinite::none();
    if (x_in_domain) out.points.push_back(x);
    return out;
  }
  return FiniteCofinite::none();
}

}  // namespace lcurve
