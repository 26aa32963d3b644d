#include "doctest.h"

#include "nematic/crosstie.hpp"
#include "nematic/rect1d.hpp"

#include <cmath>
#include <random>

using namespace nematic;

TEST_CASE("period equation root and its closed-form inverse") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (int k = 0; k < 100; ++k) {
    const double l = dist(rng);
    const double Tt = solve_Ttilde(l);
    CHECK(Tt > std::tan(kPi / 8));
    CHECK(Tt < 1.0);
    CHECK(std::abs(period_residual(Tt, l)) < 1e-12);
    CHECK(std::abs(L_over_H_from_Ttilde(Tt) - l) < 1e-10);
  }
}

TEST_CASE("half periods quoted for L/H = 1 and 3") {
  CHECK(std::abs(solve_Ttilde(1.0) / 2 - 0.3) <= 0.02);
  CHECK(std::abs(solve_Ttilde(3.0) / 2 - 0.25) <= 0.02);
  // frozen
  CHECK(solve_Ttilde(1.0) == doctest::Approx(0.6389).epsilon(1e-4));
  CHECK(solve_Ttilde(3.0) == doctest::Approx(0.4807).epsilon(1e-4));
}

TEST_CASE("region I radii are at least H and the side x = T is a characteristic") {
  const CrossTieSolution sol = build_crosstie(1.5, 1.0);
  for (int k = 0; k <= 100; ++k) {
    const double s = sol.T * k / 100;
    const double v = sol.region1.seed(s).v0;
    CHECK(std::abs(v) <= 1.0 / sol.H + 1e-14);
  }
  CHECK(sol.region1.seed(sol.T).v0 == 0.0);
  const double ts = sol.region1.t_star(sol.T);
  CHECK(ts == doctest::Approx(sol.H));
  for (double t : {0.0, 0.3, 0.7, 1.0}) CHECK(sol.region1.point(sol.T, t * ts).p.x == doctest::Approx(sol.T));
}

TEST_CASE("construction invariants") {
  for (double l : {1.0, 1.5, 2.0}) {
    const CrossTieSolution sol = build_crosstie(l, 1.0);
    const CrossTieInvariants inv = crosstie_invariants(sol, 512);
    CHECK(inv.tangency < 1e-9);
    CHECK(inv.terminal_arrival < 1e-9);
    CHECK(inv.wall_residual < 1e-8);
    CHECK(inv.theta2_increasing);
    CHECK(inv.v2_negative_decreasing);
    CHECK(inv.alpha_t1 >= kPi / 4);
    CHECK(inv.alpha_t1 <= kPi / 2);
    CHECK(inv.min_radius_over_H >= 1.0 - 1e-12);
    CHECK(inv.gamma_theta_jump < 1e-8);
    CHECK(inv.gamma_v_jump > 0.0);
    for (bool f : inv.foliation) CHECK(f);
  }
}

TEST_CASE("region II arrival angle increases") {
  const CrossTieSolution sol = build_crosstie(1.5, 1.0);
  const double smax = sol.region2.s_max;
  double prev = region2_arrival_angle(0.0, sol.alpha, sol.L);
  for (int k = 1; k <= 512; ++k) {
    const double th = region2_arrival_angle(smax * k / 512, sol.alpha, sol.L);
    CHECK(th > prev);
    prev = th;
  }
}

TEST_CASE("energy per length depends on L/H only") {
  const double a = crosstie_energy_per_length(1.0, 0.5);
  const double b = crosstie_energy_per_length(2.0, 1.0);
  CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("field is unit, periodic and meets the top and bottom data") {
  const CrossTieSolution sol = build_crosstie(1.5, 1.0);
  for (double x : {-0.7, -0.2, 0.05, 0.3, 1.1})
    for (double y : {-0.9, -0.4, 0.2, 0.8}) {
      const CrossTieSample a = crosstie_field_eval(sol, {x, y});
      const CrossTieSample b = crosstie_field_eval(sol, {x + 2 * sol.T, y});
      CHECK(norm(a.u) == doctest::Approx(1.0));
      CHECK(norm(a.u - b.u) < 1e-9);
    }
  for (double x : {0.1, 0.3}) {
    CHECK(norm(crosstie_field_eval(sol, {x, sol.H}).u - Vec2{1, 0}) < 1e-9);
    CHECK(norm(crosstie_field_eval(sol, {x, -sol.H}).u - Vec2{-1, 0}) < 1e-9);
  }
  CHECK_THROWS(crosstie_field_eval(sol, {0.0, 1.5}));
}

TEST_CASE("the one-dimensional wall wins at L/H = 0.5") {
  CHECK(crosstie_energy_per_length(0.5, 1.0) > min_energy_1d(0.5, 1.0, 0.0));
}

TEST_CASE("the cross-tie wins at L/H = 1.5") {
  const double e = crosstie_energy_per_length(1.5, 1.0);
  CHECK(e < min_energy_1d(1.5, 1.0, 0.0));
  CHECK(e == doctest::Approx(1.16721).epsilon(1e-4));
}

TEST_CASE("explicit periodic map") {
  CHECK(norm(remark_crosstie_map(0.0, 0.3) - Vec2{1, 0}) < 1e-15);
  CHECK(norm(remark_crosstie_map(1.0, 0.3) - Vec2{1, 0}) < 1e-15);
  for (double x : {-0.4, -0.1, 0.2, 0.45}) {
    const Vec2 up = remark_crosstie_map(x, 1e-12), dn = remark_crosstie_map(x, -1e-12);
    CHECK(up.y == doctest::Approx(dn.y));
    CHECK(std::acos(std::abs(up.y)) == doctest::Approx(kPi / 4));
  }
  // normal component continuous across x = 1/2
  for (double y : {-3.0, -0.3, 0.2, 0.7, 5.0}) {
    const Vec2 l = remark_crosstie_map(0.5 - 1e-12, y), r = remark_crosstie_map(0.5 + 1e-12, y);
    CHECK(l.x == doctest::Approx(r.x).epsilon(1e-9));
  }
}

TEST_CASE("explicit map costs 4/3 per period") {
  CHECK(std::abs(remark_crosstie_energy() - 4.0 / 3.0) < 1e-8);
  // odd count keeps the vortex centre at the origin off the sample
  for (const WallPiece& w : remark_crosstie_walls()) CHECK(w.sample(63).check().empty());
}
