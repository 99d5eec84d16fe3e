#ifndef LCURVE_CURVE_HPP
#define LCURVE_CURVE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcurve/interval_set.hpp"
#include "lcurve/piecewise.hpp"
#include "lcurve/space.hpp"

namespace lcurve {

// Finite-step curve: value pieces[i].value on pieces[i].set, Zero off all
// pieces. Atoms are finitely many point overrides (null corrections, e.g.
// the value at t == 1 or at closed endpoints of a compact); they are
// invisible to every integral quantity.
struct SimpleCurve {
  struct Piece {
    Vector value;
    IntervalSet set;
  };
  struct Atom {
    Rat at;
    Vector value;
  };
  std::vector<Piece> pieces;
  std::vector<Atom> atoms;
};

// t -> shape(t) * direction, shape piecewise linear. Covers constants,
// linear curves and mollified indicator curves exactly.
struct ShapeCurve {
  PWAffine shape;
  Vector direction;
};

// t -> Hat(t, steep) in the pointwise model: the traveling-bump path.
struct HatPathCurve {
  Rat steep;
};

// t -> Indicator(t) in the pointwise model.
struct DeltaPathCurve {};

// Black-box evaluator with declared discontinuity candidates and trusted
// per-seminorm Lipschitz constants. Quadrature against it is adaptive.
struct GeneralCurve {
  std::function<Vector(double)> evaluator;
  std::vector<Rat> breakpoints;
  std::map<std::size_t, double> lip;
  std::string name;
};

struct Curve {
  SpaceModel space;
  std::variant<SimpleCurve, ShapeCurve, HatPathCurve, DeltaPathCurve, GeneralCurve> rep;

  // Throws std::domain_error for t outside [0,1].
  Vector eval(const Rat& t) const;
  Vector eval(double t) const;

  bool is_simple() const { return std::holds_alternative<SimpleCurve>(rep); }
  const SimpleCurve& as_simple() const { return std::get<SimpleCurve>(rep); }

  // Points of possible discontinuity / kinks relevant to quadrature.
  std::vector<Rat> breakpoints() const;
  // Lipschitz constant of t -> gamma(t) w.r.t. seminorm qi, when derivable
  // from the representation or declared.
  std::optional<double> lipschitz(std::size_t qi) const;
  // True for representations continuous on all of [0,1].
  bool globally_continuous() const;
};

Curve make_simple(SpaceModel space, std::vector<SimpleCurve::Piece> pieces,
                  std::vector<SimpleCurve::Atom> atoms = {});
Curve make_constant(SpaceModel space, Vector value);
Curve make_shape(SpaceModel space, PWAffine shape, Vector direction);
Curve make_hat_path(SpaceModel space, const Rat& steep);
Curve make_delta_path(SpaceModel space);
Curve make_general(SpaceModel space, std::function<Vector(double)> evaluator,
                   std::vector<Rat> breakpoints, std::map<std::size_t, double> lip,
                   std::string name);

// q_s(Indicator(s) - Indicator(s2)) == 1 for s != s2; throws when s == s2.
double delta_separation(const Rat& s, const Rat& s2);

// The uniform-Cauchy gap of the traveling-bump paths: evaluates
// q_x(HatPath(m)(x + 1/(2n)) - HatPath(n)(x + 1/(2n))) exactly and checks
// it against |max{1 - m/(2n), 0} - 1/2|. Requires m >= 2n and
// x + 1/(2n) in (0,1).
double hat_cauchy_gap(long n, long m, const Rat& x);

// Simple-function discretization of the hat path on cells of the given
// width: on [k*mesh, (k+1)*mesh) the value is Hat(k*mesh, steep).
Curve hat_discretization(SpaceModel space, const Rat& steep, const Rat& mesh);

// Finite/cofinite subsets of [0,1]: the preimage algebra of the delta
// path under finitely many coordinate constraints.
struct FiniteCofinite {
  bool cofinite = false;       // false: the set IS `points`
  std::vector<Rat> points;     // cofinite: [0,1] minus `points`

  static FiniteCofinite all() { return {true, {}}; }
  static FiniteCofinite none() { return {false, {}}; }
  FiniteCofinite intersect(const FiniteCofinite& other) const;
  std::string str() const;
};

// {t in [0,1] : delta_t(x) in (u_lo, u_hi)} as an explicit finite or
// cofinite set: checks whether 0 and/or 1 lie in the window.
FiniteCofinite delta_preimage(const Rat& x, double u_lo, double u_hi);

}  // namespace lcurve

#endif  // LCURVE_CURVE_HPP
