#include "doctest.h"

#include "nematic/disc.hpp"
#include "nematic/energy.hpp"

#include <cmath>

using namespace nematic;

TEST_CASE("hedgehog field is unit with divergence 2") {
  for (int sign : {1, -1}) {
    for (Vec2 p : {Vec2{0.3, 0.1}, Vec2{-0.5, 0.6}, Vec2{0.0, -0.9}}) {
      CHECK(norm(hedgehog_field(sign, p)) == doctest::Approx(1.0));
      const double h = 1e-6;
      const double div = (hedgehog_field(sign, p + Vec2{h, 0}).x - hedgehog_field(sign, p - Vec2{h, 0}).x +
                          hedgehog_field(sign, p + Vec2{0, h}).y - hedgehog_field(sign, p - Vec2{0, h}).y) /
                         (2 * h);
      CHECK(div == doctest::Approx(2.0).epsilon(1e-6));
    }
    // tangent to the boundary
    CHECK(dot(hedgehog_field(sign, {1.0, 0.0}), Vec2{1.0, 0.0}) == doctest::Approx(1.0));
  }
  CHECK_THROWS(hedgehog_solution(0));
}

TEST_CASE("degree -1 region I has the boundary curvature and ends on the boundary") {
  const DegMinusOneSolution sol = build_deg_minus_one(0.6, 0.5);
  for (double s : {sol.s0, 0.5, 0.6}) CHECK(sol.region1.seed(s).v0 == doctest::Approx(-1.0 / 0.6));
  CHECK(sol.s0 == doctest::Approx((std::sqrt(2.0) - 1.0) * 0.6));
}

TEST_CASE("region III divergence near the centre tends to -1/L") {
  for (double L : {0.25, 0.5, 1.0}) CHECK(std::abs(region3_v0(1e-4, L) + 1.0 / L) < 1e-3);
}

TEST_CASE("seed divergences are monotone along the seeds") {
  const double R = 0.6, L = 0.5, s0 = (std::sqrt(2.0) - 1.0) * R;
  double prev = region3_v0(0.0, L);
  for (int k = 1; k <= 100; ++k) {
    const double v = region3_v0(s0 * k / 100, L);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
  prev = region2_v0(0.0, R, L);
  for (int k = 1; k <= 100; ++k) {
    const double v = region2_v0(0.25 * kPi * R * k / 100, R, L);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
  CHECK(prev == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("diagonal wall condition holds on both pieces") {
  for (double L : {0.2, 0.5, 1.0}) {
    const DegMinusOneSolution sol = build_deg_minus_one(0.6, L);
    CHECK(deg_minus_one_diagonal_residual(sol, 200) < 1e-8);
  }
}

TEST_CASE("degree -1 arcs end on the diagonal") {
  const DegMinusOneSolution sol = build_deg_minus_one(0.6, 0.5);
  for (const CharacteristicFamily* f : {&sol.region2, &sol.region3})
    for (int k = 1; k < 20; ++k) {
      const double s = f->s_min + (f->s_max - f->s_min) * k / 20;
      const Vec2 p = f->point(s, f->t_star(s)).p;
      CHECK(std::abs(p.x - p.y) < 1e-10);
    }
  const CharacteristicFamily& f1 = sol.region1;
  for (int k = 0; k < 20; ++k) {
    const double s = f1.s_min + (f1.s_max - f1.s_min) * k / 20;
    const Vec2 p = f1.point(s, f1.t_star(s)).p;
    CHECK(norm(p) == doctest::Approx(0.6).epsilon(1e-10));
  }
}

TEST_CASE("degree -1 families are foliations") {
  const DegMinusOneSolution sol = build_deg_minus_one(0.6, 0.5);
  for (const CharacteristicFamily* f : {&sol.region1, &sol.region2, &sol.region3}) {
    const FoliationReport r = check_foliation(*f, 32, 32);
    CHECK(r.crossings == 0);
    CHECK(r.sign_consistent);
  }
}

TEST_CASE("degree -1 field matches the boundary data and its symmetries") {
  const DegMinusOneSolution sol = build_deg_minus_one(0.6, 0.5);
  for (double phi : {0.1, 0.5, 1.3, 2.0, 3.5, 5.0}) {
    const Vec2 p = unit_from_angle(phi) * (0.6 * (1 - 1e-9));
    const DiscSample d = deg_minus_one_field_eval(sol, p);
    // boundary datum (cos phi, -sin phi)
    CHECK(d.u.x == doctest::Approx(std::cos(phi)).epsilon(1e-6));
    CHECK(d.u.y == doctest::Approx(-std::sin(phi)).epsilon(1e-6));
  }
  const DiscSample a = deg_minus_one_field_eval(sol, {0.2, 0.1});
  const DiscSample b = deg_minus_one_field_eval(sol, {0.2, -0.1});
  CHECK(a.u.x == doctest::Approx(b.u.x));
  CHECK(a.u.y == doctest::Approx(-b.u.y));
  const DiscSample j = deg_minus_one_field_eval(sol, {0.2, 0.2});
  CHECK(j.on_jump);
  CHECK(dot(j.u - j.u_other, Vec2{-1, 1}) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS(deg_minus_one_field_eval(sol, {0.7, 0.0}));
}

TEST_CASE("degree -1 energy increases with L") {
  double prev = 0.0;
  for (int k = 1; k <= 7; ++k) {
    const double L = 0.1 * k;
    const EnergyBreakdown e = eval_E0_piecewise(build_deg_minus_one(0.6, L).field, make_params(L, 0.01, 1, 1, 0.6, 0));
    CHECK(e.total > prev);
    CHECK(e.wall_interior > 0.0);
    prev = e.total;
  }
}
