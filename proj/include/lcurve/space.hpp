#ifndef LCURVE_SPACE_HPP
#define LCURVE_SPACE_HPP

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lcurve/rational.hpp"

namespace lcurve {

enum class SpaceKind { FiniteDim, Pointwise };

// One seminorm of a finite-dimensional model: v -> sum_j w_j * |v_j|
// with nonnegative weights.
struct CoordSeminorm {
  std::vector<double> weights;
};

// A concrete seminorm-family model of a locally convex space.
//
// FiniteDim: R^d with a finite list of weighted absolute coordinate
// seminorms (the default family is the d coordinate seminorms, which is
// separating).
//
// Pointwise: the function-space model. Vectors are finite combinations
// of evaluable primitives; the seminorm family is q_x(f) = |f(x)|, of
// which a finite active list of evaluation points x participates in any
// computation.
struct SpaceModel {
  SpaceKind kind = SpaceKind::FiniteDim;
  int dim = 0;                          // FiniteDim
  std::vector<CoordSeminorm> seminorms;  // FiniteDim active family
  std::vector<Rat> eval_points;          // Pointwise active family

  static SpaceModel finite_dim(int d);  // coordinate seminorms
  static SpaceModel finite_dim(int d, std::vector<CoordSeminorm> qs);
  static SpaceModel pointwise(std::vector<Rat> xs);

  std::size_t seminorm_count() const;
  std::string seminorm_name(std::size_t qi) const;
  bool compatible(const SpaceModel& other) const;
};

// Pointwise-space primitives. Zero is the empty combination.
struct HatPrim {
  Rat center;
  Rat steep;  // x -> max{1 - steep*|x - center|, 0}
  bool operator==(const HatPrim& o) const {
    return center == o.center && steep == o.steep;
  }
};
struct IndPrim {
  Rat at;  // x -> 1 iff x == at
  bool operator==(const IndPrim& o) const { return at == o.at; }
};
using Primitive = std::variant<HatPrim, IndPrim>;

// A vector of a SpaceModel. FiniteDim vectors carry coordinates;
// Pointwise vectors carry a normalized formal combination with exact
// rational coefficients, so pointwise evaluation is exact.
struct Vector {
  SpaceKind kind = SpaceKind::FiniteDim;
  std::vector<double> coords;                        // FiniteDim
  std::vector<std::pair<Rat, Primitive>> terms;      // Pointwise

  static Vector zero(SpaceKind k);
  static Vector fin(std::vector<double> coords);
  static Vector hat(const Rat& center, const Rat& steep);
  static Vector ind(const Rat& at);

  bool is_zero() const;
};

Vector vec_add(const Vector& u, const Vector& v);
Vector vec_scale(const Rat& alpha, const Vector& v);
Vector vec_scale(double alpha, const Vector& v);
Vector vec_sub(const Vector& u, const Vector& v);

// Pointwise evaluation; exact rational for Pointwise vectors.
Rat vec_eval_exact(const Vector& v, const Rat& x);
double vec_eval(const Vector& v, double x);

// q_{qi}(v). Throws std::out_of_range for an unknown seminorm index.
double seminorm_eval(const SpaceModel& space, std::size_t qi, const Vector& v);

// A dual functional: FiniteDim coefficient pairing, or a finite
// combination of point evaluations pi_x in the Pointwise model.
struct Functional {
  SpaceKind kind = SpaceKind::FiniteDim;
  std::vector<double> coeffs;                 // FiniteDim
  std::vector<std::pair<Rat, Rat>> point_evals;  // Pointwise: (coef, x)

  static Functional coord(int j, int dim);
  static Functional fin(std::vector<double> coeffs);
  static Functional point_eval(const Rat& x);
  static Functional point_combo(std::vector<std::pair<Rat, Rat>> terms);
};

double functional_apply(const Functional& f, const Vector& v);

// The generating dual family used by weak-integration checks: coordinate
// projections (FiniteDim) or point evaluations at the active points.
std::vector<Functional> generating_functionals(const SpaceModel& space);

}  // namespace lcurve

#endif  // LCURVE_SPACE_HPP
