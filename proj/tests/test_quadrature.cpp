#include <doctest.h>

#include <cmath>

#include "lcurve/quadrature.hpp"
#include "oracles.hpp"

using namespace lcurve;
using namespace lcurve::testing;

namespace {

SpaceModel fin1() { return SpaceModel::finite_dim(1); }

Curve linear_curve(const SpaceModel& space) {
  std::vector<double> e1(static_cast<std::size_t>(space.dim), 0.0);
  e1[0] = 1.0;
  return make_shape(space, PWAffine::linear(0, 1), Vector::fin(std::move(e1)));
}

}  // namespace

TEST_CASE("piecewise affine basics") {
  PWAffine f = PWAffine::linear(-0.5, 1.0);  // t - 1/2
  CHECK(f.eval(0.25) == -0.25);
  PWAffine a = pw_abs(f);
  CHECK(a.eval(0.25) == 0.25);
  CHECK(a.eval(0.75) == 0.25);
  CHECK(pw_integral(a) == 0.25);  // exact: dyadic arithmetic throughout
  CHECK(pw_integral(pw_max0(f)) == 0.125);

  PWAffine s = PWAffine::step(IntervalSet::interval(rat(1, 4), rat(3, 4)), 2.0);
  CHECK(pw_integral(s) == 1.0);
  CHECK(pw_integral(pw_sub(s, s)) == 0.0);
  CHECK(pw_sup_abs(pw_add(s, a)) == doctest::Approx(2.25));
  CHECK(pw_integral_pow(s, 2.0) == 2.0);

  CHECK_THROWS_AS(pw_integral_pow(PWAffine::constant(-1.0), 2.0), std::domain_error);
}

TEST_CASE("lp_seminorm frozen examples") {
  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve zero = make_constant(pw, Vector::zero(SpaceKind::Pointwise));
  CHECK(lp_seminorm(zero, 0, 1.0).value == 0.0);

  // ||HatPath(10)||_{L2, q_0.5}^2 = 2/(10*3) = 1/15
  Curve hat = make_hat_path(pw, rat(10));
  QuadratureResult r = lp_seminorm(hat, 0, 2.0);
  CHECK(r.method == QuadratureResult::Method::ExactPiecewise);
  CHECK(r.abs_error_bound == 0.0);
  CHECK(r.raw_integral == doctest::Approx(1.0 / 15).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(std::sqrt(1.0 / 15)).epsilon(1e-12));

  // step curve with q(y0) = 2 on [0, 1/4): integral is exactly 1/2
  Curve step = make_simple(fin1(), {{Vector::fin({2}), IntervalSet::interval(rat(0), rat(1, 4))}});
  QuadratureResult s = lp_seminorm(step, 0, 1.0);
  CHECK(s.value == 0.5);
  CHECK(s.abs_error_bound == 0.0);
}

TEST_CASE("hat lp values match the antiderivative oracle, clipped included") {
  SpaceModel pw = SpaceModel::pointwise({rat(1, 10), rat(1, 2), rat(9, 10)});
  for (long n : {1L, 2L, 5L, 17L, 128L}) {
    Curve hat = make_hat_path(pw, rat(n));
    for (std::size_t xi = 0; xi < 3; ++xi) {
      for (double p : {1.0, 2.0, 3.0}) {
        double expected = hat_lp_integral(static_cast<double>(n),
                                          rat_to_double(pw.eval_points[xi]), p);
        QuadratureResult r = lp_seminorm(hat, xi, p);
        CHECK(r.raw_integral == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("delta path has zero Lp distance to zero while differing everywhere") {
  SpaceModel pw = SpaceModel::pointwise({rat(1, 4), rat(2, 3)});
  Curve delta = make_delta_path(pw);
  Curve zero = make_constant(pw, Vector::zero(SpaceKind::Pointwise));
  for (std::size_t qi = 0; qi < 2; ++qi) {
    CHECK(lp_distance(delta, zero, qi, 1.0).value == 0.0);
    CHECK(lp_distance(delta, zero, qi, 2.0).value == 0.0);
  }
  for (long i = 0; i < 20; ++i)
    CHECK(!delta.eval(rat(i, 20)).is_zero());
}

TEST_CASE("weak integral frozen examples") {
  // step curve: measure(A) * y0
  IntervalSet a = IntervalSet::interval(rat(1, 8), rat(5, 8));
  Curve step = make_simple(fin1(), {{Vector::fin({4}), a}});
  Vector z = weak_integral(step, IntervalSet::full());
  CHECK(z.coords[0] == 2.0);

  // hat path over [0,1] evaluated at interior x: 1/n
  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve hat = make_hat_path(pw, rat(10));
  Vector zh = weak_integral(hat, IntervalSet::full());
  CHECK(rat_to_double(vec_eval_exact(zh, rat(1, 2))) == doctest::Approx(0.1).epsilon(1e-12));

  // delta path integrates to zero on every active coordinate
  Curve delta = make_delta_path(pw);
  CHECK(weak_integral(delta, IntervalSet::full()).is_zero());

  CHECK(weak_integral_residual(step, IntervalSet::full(), z) <= 1e-10);
  CHECK(weak_integral_residual(hat, IntervalSet::full(), zh) <= 1e-10);
  CHECK(weak_integral_residual(delta, IntervalSet::full(),
                               weak_integral(delta, IntervalSet::full())) <= 1e-10);
}

TEST_CASE("running integral moduli") {
  Curve zero = make_constant(fin1(), Vector::zero(SpaceKind::FiniteDim));
  RunningIntegral rz = running_integral(zero, rat(1, 10));
  CHECK(rz.modulus[0] == 0.0);

  // eta(t) = min(t, 1/2) * y0 for the half-interval step curve
  Curve step = make_simple(fin1(), {{Vector::fin({1}), IntervalSet::interval(rat(0), rat(1, 2))}});
  RunningIntegral rs = running_integral(step, rat(1, 10));
  CHECK(rs.values[3].coords[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(rs.values.back().coords[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rs.modulus[0] <= 0.1 + 1e-12);

  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  RunningIntegral rh = running_integral(make_hat_path(pw, rat(10)), rat(1, 100));
  CHECK(rh.modulus[0] <= 0.01 + 1e-12);  // integrand bounded by 1
}

TEST_CASE("seminorm-integral inequality: equality and cancellation cases") {
  Curve constant = make_constant(fin1(), Vector::fin({3}));
  SeminormIntegralCheck eq = hb_inequality_check(constant, 0);
  CHECK(eq.pass);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-14));

  // cancellation: +y0 then -y0 integrates to zero, the q-integral does not
  Curve signs = make_simple(
      fin1(), {{Vector::fin({1}), IntervalSet::interval(rat(0), rat(1, 2))},
               {Vector::fin({-1}), IntervalSet::interval(rat(1, 2), rat(1))}});
  SeminormIntegralCheck canc = hb_inequality_check(signs, 0);
  CHECK(canc.pass);
  CHECK(canc.lhs == 0.0);
  CHECK(canc.rhs == 1.0);

  // hat path at the evaluation point: equality (nonnegative integrand)
  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  SeminormIntegralCheck hat = hb_inequality_check(make_hat_path(pw, rat(10)), 0);
  CHECK(hat.pass);
  CHECK(hat.lhs == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(hat.rhs == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("absolute-continuity budget") {
  Curve zero = make_constant(fin1(), Vector::zero(SpaceKind::FiniteDim));
  CHECK(abs_continuity_delta(zero, 0, 1.0, 0.1) == 1.0);

  // mass rate 2 inside [0,1/4): delta = budget / 2 must be accepted
  Curve step = make_simple(fin1(), {{Vector::fin({2}), IntervalSet::interval(rat(0), rat(1, 4))}});
  double delta = abs_continuity_delta(step, 0, 1.0, 0.1);
  CHECK(delta >= 0.05 - 1e-9);
  Rng rng(5150);
  CurveTerm self{rat(1), &step};
  auto profile = seminorm_profile(std::span<const CurveTerm>(&self, 1), 0);
  REQUIRE(profile.has_value());
  for (int trial = 0; trial < 100; ++trial) {
    IntervalSet a = rng.interval_set(3, 10000);
    if (rat_to_double(a.measure()) >= delta) continue;
    CHECK(pw_integral_pow_over(*profile, 1.0, a) < 0.1);
  }

  // bounded curve: budget / sup^p is always accepted
  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve hat = make_hat_path(pw, rat(10));
  CHECK(abs_continuity_delta(hat, 0, 2.0, 0.05) >= 0.05 - 1e-9);
}

TEST_CASE("p-monotonicity of the Lp seminorms") {
  Curve constant = make_constant(fin1(), Vector::fin({2}));
  PMonotonicity eq = p_monotonicity_check(constant, 0, 1.0, 2.0);
  CHECK(eq.pass);
  CHECK(eq.norm_p == doctest::Approx(eq.norm_r).epsilon(1e-12));

  Curve step = make_simple(fin1(), {{Vector::fin({1}), IntervalSet::interval(rat(0), rat(1, 4))}});
  PMonotonicity st = p_monotonicity_check(step, 0, 1.0, 2.0);
  CHECK(st.pass);
  CHECK(st.norm_p == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(st.norm_r == doctest::Approx(0.5).epsilon(1e-12));

  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  PMonotonicity hat = p_monotonicity_check(make_hat_path(pw, rat(10)), 0, 1.0, 2.0);
  CHECK(hat.pass);
  CHECK(hat.norm_p == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(hat.norm_r == doctest::Approx(std::sqrt(1.0 / 15)).epsilon(1e-12));
}

TEST_CASE("adaptive branch agrees with the exact branch") {
  SpaceModel space = SpaceModel::finite_dim(1);
  Curve linear = linear_curve(space);
  // same curve as a black box: forces the adaptive path
  Curve blackbox = make_general(
      space, [](double t) { return Vector::fin({t}); }, {}, {{0, 1.0}}, "opaque-linear");
  for (double p : {1.0, 2.0, 3.0}) {
    QuadratureResult exact = lp_seminorm(linear, 0, p);
    QuadratureResult adaptive = lp_seminorm(blackbox, 0, p);
    CHECK(exact.method == QuadratureResult::Method::ExactPiecewise);
    CHECK(adaptive.method == QuadratureResult::Method::Adaptive);
    CHECK(adaptive.raw_integral ==
          doctest::Approx(exact.raw_integral).epsilon(1e-9));
    CHECK(adaptive.raw_integral - adaptive.abs_error_bound <=
          exact.raw_integral + 1e-12);
    CHECK(exact.raw_integral <=
          adaptive.raw_integral + adaptive.abs_error_bound + 1e-12);
  }
}

TEST_CASE("cell cap failure reports a quadrature error") {
  SpaceModel space = SpaceModel::finite_dim(1);
  Curve wild = make_general(
      space, [](double t) { return Vector::fin({std::sin(1.0 / (t + 1e-14))}); }, {},
      {}, "wild");
  QuadOptions opts;
  opts.abs_tol = 1e-13;
  opts.max_cells = 200;
  CHECK_THROWS_AS(lp_seminorm(wild, 0, 1.0, opts), QuadratureError);
}

TEST_CASE("lp seminorm axioms on random curve pairs") {
  Rng rng(777);
  SpaceModel space = SpaceModel::finite_dim(2, {CoordSeminorm{{1.0, 1.0}}});
  for (int trial = 0; trial < 200; ++trial) {
    IntervalSet a = rng.interval_set(3, 64);
    IntervalSet b = rng.interval_set(3, 64);
    Curve c1 = make_simple(space, {{Vector::fin({rng.real(-3, 3), rng.real(-3, 3)}), a}});
    Curve c2 = make_simple(space, {{Vector::fin({rng.real(-3, 3), rng.real(-3, 3)}), b}});
    double p = trial % 2 ? 1.0 : 2.0;

    double alpha = rng.real(-4, 4);
    std::array<CurveTerm, 1> scaled{CurveTerm{rat_from_double(alpha), &c1}};
    CHECK(lp_combo_norm(scaled, 0, p).value ==
          doctest::Approx(std::abs(alpha) * lp_seminorm(c1, 0, p).value)
              .epsilon(1e-10));

    std::array<CurveTerm, 2> sum{CurveTerm{rat(1), &c1}, CurveTerm{rat(1), &c2}};
    CHECK(lp_combo_norm(sum, 0, p).value <=
          lp_seminorm(c1, 0, p).value + lp_seminorm(c2, 0, p).value + 1e-10);
  }
}
