#include <doctest.h>

#include <cmath>

#include "lcurve/approx.hpp"
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

TEST_CASE("uniform_simple_approx: constants, Lipschitz curves, hat paths") {
  Curve constant = make_constant(fin1(), Vector::fin({7}));
  auto [beta0, rep0] = uniform_simple_approx(constant, full_certificate(), 0, 0.1);
  CHECK(rep0.measured == 0.0);
  CHECK(rep0.pass);
  CHECK(beta0.eval(rat(1, 3)).coords[0] == 7.0);

  Curve linear = linear_curve(fin1());
  auto [beta1, rep1] = uniform_simple_approx(linear, full_certificate(), 0, 0.1);
  CHECK(rep1.measured < 0.1);
  // mesh below eps/(2 L): sampled value differs from t by < 0.1 everywhere
  for (long i = 0; i <= 100; ++i) {
    Rat t = rat(i, 100);
    CHECK(std::abs(beta1.eval(t).coords[0] - rat_to_double(t)) < 0.1);
  }

  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve hat = make_hat_path(pw, rat(5));
  auto [beta2, rep2] = uniform_simple_approx(hat, full_certificate(), 0, 0.2);
  CHECK(rep2.measured < 0.2);
  CHECK(rep2.pass);

  // beta keeps the endpoint value as an atom
  CHECK(beta1.eval(rat(1)).coords[0] == 1.0);
}

TEST_CASE("uniform_simple_approx: simple input under its exact certificate") {
  SpaceModel space = fin1();
  IntervalSet a = IntervalSet::interval(rat(1, 4), rat(3, 4));
  Curve step = make_simple(space, {{Vector::fin({5}), a}});
  LusinCertificate cert = simple_certificate(step, rat(1, 10));
  auto [beta, rep] = uniform_simple_approx(step, cert, 0, 0.01);
  CHECK(rep.measured == 0.0);  // locally constant on K
  // beta agrees with the step on K
  for (const auto& piece : cert.K.pieces) {
    CHECK(beta.eval(piece.lo).coords == step.eval(piece.lo).coords);
    CHECK(beta.eval(piece.hi).coords == step.eval(piece.hi).coords);
  }
}

TEST_CASE("uniform_simple_approx: missing modulus metadata is an error") {
  Curve opaque = make_general(
      fin1(), [](double t) { return Vector::fin({t}); }, {}, {}, "no-metadata");
  CHECK_THROWS_AS(uniform_simple_approx(opaque, full_certificate(), 0, 0.1),
                  std::invalid_argument);
}

TEST_CASE("lp_simple_approx achieves its budget") {
  Curve zero = make_constant(fin1(), Vector::zero(SpaceKind::FiniteDim));
  auto [bz, rz] = lp_simple_approx(zero, 0, 1.0, 0.1);
  CHECK(rz.measured == 0.0);

  Curve linear = linear_curve(fin1());
  auto [bl, rl] = lp_simple_approx(linear, 0, 1.0, 0.1);
  CHECK(rl.pass);
  CHECK(rl.measured < 0.1);
  // independent adaptive cross-check of the reported distance
  Curve opaque = make_general(
      fin1(), [](double t) { return Vector::fin({t}); }, {}, {{0, 1.0}}, "opaque");
  QuadratureResult cross = lp_distance(opaque, bl, 0, 1.0);
  CHECK(cross.value == doctest::Approx(rl.measured).epsilon(1e-8));

  // a simple input is its own approximation
  Curve step = make_simple(fin1(), {{Vector::fin({2}), IntervalSet::interval(rat(0), rat(1, 3))}});
  auto [bs, rs] = lp_simple_approx(step, 0, 2.0, 0.01);
  CHECK(rs.measured == 0.0);
  CHECK(bs.as_simple().pieces.size() == 1);

  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve hat = make_hat_path(pw, rat(5));
  auto [bh, rh] = lp_simple_approx(hat, 0, 2.0, 0.05);
  CHECK(rh.pass);
  CHECK(rh.measured < 0.05);
}

TEST_CASE("lp_simple_approx refuses the delta path") {
  // the delta path is a.e. zero in every Lp seminorm, but as a concrete
  // representative it admits no continuity certificate: every modulus
  // bucket observes the full separation 1
  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve delta = make_delta_path(pw);
  CHECK_THROWS_AS(lp_simple_approx(delta, 0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("urysohn_1d: ramps, sandwich, degenerate margins") {
  CompactSet k = CompactSet::from_pieces({{rat(11, 50), rat(29, 50)}});  // [0.22, 0.58]
  IntervalSet u = IntervalSet::interval(rat(9, 50), rat(31, 50));        // [0.18, 0.62)
  PWAffine f = urysohn_1d(k, u);
  for (long i = 0; i <= 1000; ++i) {
    Rat t = rat(i, 1000);
    double v = f.eval(t);
    CHECK(v >= -1e-12);
    CHECK(v <= 1 + 1e-12);
    if (k.contains(t)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    if (!u.contains(t) && t != rat(1)) CHECK(v == 0.0);
  }

  CHECK(pw_integral(urysohn_1d(CompactSet::empty(), u)) == 0.0);

  PWAffine all = urysohn_1d(CompactSet::full(), IntervalSet::full());
  CHECK(all.eval(rat(0)) == 1.0);
  CHECK(all.eval(rat(1, 2)) == 1.0);
  CHECK(all.eval(rat(1)) == 1.0);

  // zero margin away from the domain boundary is rejected
  CompactSet flush = CompactSet::from_pieces({{rat(9, 50), rat(1, 2)}});
  CHECK_THROWS_AS(urysohn_1d(flush, u), std::invalid_argument);
}

TEST_CASE("continuous_approx_char meets the q(y0)^p/n rate") {
  SpaceModel space = fin1();
  auto [zero_curve, zero_reports] =
      continuous_approx_char(Vector::fin({1}), IntervalSet::empty(), 5, 1.0, space);
  CHECK(zero_reports[0].measured == 0.0);

  IntervalSet a = IntervalSet::interval(rat(1, 5), rat(3, 5));
  auto [a5, r5] = continuous_approx_char(Vector::fin({1}), a, 5, 1.0, space);
  CHECK(r5[0].pass);
  CHECK(r5[0].measured <= 0.2 + 1e-12);

  auto [a40, r40] = continuous_approx_char(Vector::fin({2}), a, 40, 2.0, space);
  CHECK(r40[0].pass);
  CHECK(r40[0].measured <= 0.1 + 1e-12);

  // the mollified curve stays within [0, 1] * y0 and matches chi_A off the margins
  for (long i = 0; i <= 40; ++i) {
    Rat t = rat(i, 40);
    double v = a5.eval(t).coords[0];
    CHECK(v >= -1e-12);
    CHECK(v <= 1 + 1e-12);
  }
}

TEST_CASE("dyadic_average: exact values, fixed points, idempotence") {
  // constants average to themselves at any level
  Curve constant = make_constant(fin1(), Vector::fin({3}));
  Curve avg_const = dyadic_average(constant, 4);
  for (long i = 0; i < 16; ++i)
    CHECK(avg_const.eval(rat(2 * i + 1, 32)).coords[0] == 3.0);

  // linear curve: cell averages are the midpoints (2k+1)/2^{n+1}
  Curve linear = linear_curve(fin1());
  Curve avg3 = dyadic_average(linear, 3);
  for (long k = 0; k < 8; ++k)
    CHECK(avg3.eval(rat(2 * k + 1, 16)).coords[0] ==
          static_cast<double>(2 * k + 1) / 16.0);
  // L1 error at level n is exactly 2^{-n-2}
  for (int n : {0, 1, 2, 3, 6}) {
    QuadratureResult err = lp_distance(linear, dyadic_average(linear, n), 0, 1.0);
    CHECK(err.raw_integral == std::pow(2.0, -n - 2));
  }

  // dyadic-aligned step curves are fixed points at their alignment level
  Curve step = make_simple(fin1(), {{Vector::fin({2}), IntervalSet::interval(rat(0), rat(1, 4))},
                                    {Vector::fin({-1}), IntervalSet::interval(rat(1, 2), rat(1))}});
  Curve avg_step = dyadic_average(step, 3);
  CHECK(lp_distance(step, avg_step, 0, 1.0).value == 0.0);
  for (long i = 0; i < 64; ++i)
    CHECK(avg_step.eval(rat(2 * i + 1, 128)).coords[0] ==
          step.eval(rat(2 * i + 1, 128)).coords[0]);

  // idempotence
  Curve once = dyadic_average(linear, 5);
  Curve twice = dyadic_average(once, 5);
  for (long i = 0; i < 32; ++i) {
    Rat mid = rat(2 * i + 1, 64);
    CHECK(once.eval(mid).coords[0] == twice.eval(mid).coords[0]);
  }
}

TEST_CASE("dyadic averaging errors shrink at the Lipschitz rate") {
  SpaceModel pw = SpaceModel::pointwise({rat(1, 2)});
  Curve hat = make_hat_path(pw, rat(5));
  double prev = 1e9;
  for (int n = 0; n <= 6; ++n) {
    double err = lp_distance(hat, dyadic_average(hat, n), 0, 1.0).value;
    CHECK(err <= 5.0 * std::pow(2.0, -n) + 1e-12);
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
}

TEST_CASE("uniform_limit_certificate: constant and geometric sequences") {
  SpaceModel space = fin1();
  Curve beta = make_constant(space, Vector::fin({2}));
  std::vector<Curve> constant_seq{beta, beta, beta};
  std::vector<double> tails{0.5, 0.25, 0.125};
  std::vector<std::size_t> qset{0};
  LimitResult constant_limit =
      uniform_limit_certificate(constant_seq, tails, qset, 3);
  CHECK(constant_limit.cert.K == CompactSet::full());  // constants certify all of [0,1]
  CHECK(constant_limit.levels.size() == 3);
  for (const auto& level : constant_limit.levels) CHECK(level.checked_sup == 0.0);
  CHECK(constant_limit.limit.eval(rat(1, 3)).coords[0] == 2.0);

  // beta_n = (1 - 2^-n) y0 chi_[0,1): sups are geometric
  std::vector<Curve> geometric;
  for (int n = 1; n <= 6; ++n)
    geometric.push_back(make_constant(
        space, Vector::fin({(1.0 - std::pow(2.0, -n)) * 3.0})));
  std::vector<double> geo_tails{0.5, 0.2, 0.1};
  LimitResult geo = uniform_limit_certificate(geometric, geo_tails, qset, 3);
  // limit is the deepest certified member; distance to y0 chi is the tail bound
  double gap = std::abs(geo.limit.eval(rat(1, 2)).coords[0] - 3.0);
  std::size_t deepest = geo.levels.back().tail_index;
  CHECK(gap <= std::pow(2.0, -static_cast<double>(deepest)) * 3.0 + 1e-12);
  for (const auto& level : geo.levels) {
    CHECK(level.checked_sup < level.eps_k);
    // checked sup equals the geometric gap |2^-m - 2^-n| * q(y0) of its tail
    double expected =
        (std::pow(2.0, -static_cast<double>(level.tail_index)) -
         std::pow(2.0, -6.0)) * 3.0;
    CHECK(level.checked_sup == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("uniform_limit_certificate: mismatched hats fail with the half gap") {
  SpaceModel pw = SpaceModel::pointwise({rat(3, 10)});
  std::vector<Curve> members;
  for (long n : {5L, 10L, 20L})
    members.push_back(hat_discretization(pw, rat(n), rat(1, 100)));
  std::vector<double> tails{0.4};
  std::vector<std::size_t> qset{0};
  try {
    uniform_limit_certificate(members, tails, qset, 1);
    FAIL("expected CauchyFailure");
  } catch (const CauchyFailure& failure) {
    CHECK(failure.witness.gap >= 0.5 - 1e-9);
  }
}
