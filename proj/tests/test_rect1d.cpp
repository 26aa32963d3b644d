#include "doctest.h"

#include "nematic/rect1d.hpp"

#include <cmath>

using namespace nematic;

TEST_CASE("a = 0, L = H: M and the minimum") {
  CHECK(solve_M(1.0, 1.0, 0.0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(min_energy_1d(1.0, 1.0, 0.0) == doctest::Approx(11.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("dense scan of the wall-height objective") {
  // oracle frozen from a 1e6-point scan of f on [a, 1]
  for (double a : {0.0, 0.3, 0.7}) {
    const double l = 1.0;
    double best = 1e300, arg = a;
    const int n = 1000000;
    for (int k = 0; k <= n; ++k) {
      const double m = a + (1.0 - a) * k / n;
      const double f = wall_height_objective(m, l, a);
      if (f < best) {
        best = f;
        arg = m;
      }
    }
    CHECK(std::abs(solve_M(1.0, 1.0, a) - arg) < 2e-6);
    CHECK(min_energy_1d(1.0, 1.0, a) == doctest::Approx(best).epsilon(1e-11));
    CHECK(min_energy_1d(1.0, 1.0, a) <= best + 1e-15);
  }
}

TEST_CASE("stationarity at the interior minimizer") {
  for (double a : {0.1, 0.3, 0.5})
    for (double l : {0.5, 1.0, 1.5}) {
      const double M = solve_M(l, 1.0, a);
      CHECK(M > a);
      CHECK(M < 1.0);
      CHECK(std::abs(2 * l * (M - a) - 4 * M * std::sqrt(1 - M * M)) < 1e-12);
      CHECK(std::abs(wall_height_slope(M, l, a)) < 1e-12);
    }
}

TEST_CASE("closed form for a = 0") {
  for (int k = 1; k <= 20; ++k) {
    const double l = 2.0 * k / 21.0;
    CHECK(std::abs(min_energy_1d(l, 1.0, 0.0) - (l - l * l * l / 12.0)) < 1e-10);
    CHECK(std::abs(min_energy_1d_closed(l) - (l - l * l * l / 12.0)) < 1e-15);
  }
  for (double l : {2.5, 3.0, 7.0}) {
    CHECK(std::abs(min_energy_1d(l, 1.0, 0.0) - 4.0 / 3.0) < 1e-12);
    CHECK(solve_M(l, 1.0, 0.0) == 0.0);
  }
  CHECK(std::abs(min_energy_1d(2.0, 1.0, 0.0) - 4.0 / 3.0) < 1e-12);
  CHECK(std::abs(min_energy_1d(3.0, 1.5, 0.0) - 4.0 / 3.0) < 1e-12);
}

TEST_CASE("algebraic identity behind the closed form") {
  for (double l : {0.1, 0.7, 1.3, 1.9}) {
    const double M = std::sqrt(1 - l * l / 4);
    CHECK(std::abs(l * M * M + 4.0 / 3.0 * std::pow(1 - M * M, 1.5) - (l - l * l * l / 12)) < 1e-12);
  }
}

TEST_CASE("minimizer profile energy equals the minimum") {
  for (double a : {0.0, 0.3, 0.8})
    for (double L : {0.5, 1.0, 3.0}) {
      const double H = 1.2;
      const OneDProfile p = minimizer_profile(L, H, a);
      CHECK(p.u2_at(0.0) == doctest::Approx(p.M));
      CHECK(p.u2_at(-H) == doctest::Approx(a));
      CHECK(p.u2_at(H) == doctest::Approx(a));
      const EnergyBreakdown e = eval_E0_1d(p, make_params(L, 0.01, H, 1, 1, a));
      CHECK(std::abs(e.total - min_energy_1d(L, H, a)) < 1e-12);
    }
  const OneDProfile step = minimizer_profile(3.0, 1.0, 0.0);
  CHECK(step.M == 0.0);
  CHECK(eval_E0_1d(step, make_params(3, 0.01, 1, 1, 1, 0)).wall_interior == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("recovery profile meets the boundary values exactly") {
  const Profile1D p = recovery_profile_1d(0.01, 1.0, 1.0, 0.3, 4000);
  const double b = std::sqrt(1 - 0.09);
  CHECK(p.u.front().x == -b);
  CHECK(p.u.front().y == 0.3);
  CHECK(p.u.back().x == b);
  CHECK(p.u.back().y == 0.3);
  CHECK(p.y.size() == 4001);
  CHECK_NOTHROW(eval_E_eps_1d(p, make_params(1, 0.01, 1, 1, 1, 0.3)));
}

TEST_CASE("recovery profile rejects an under-resolved grid") {
  CHECK_THROWS(recovery_profile_1d(0.01, 1.0, 1.0, 0.0, 1000));
  CHECK(default_recovery_points(0.01, 1.0) == 20000);
}

TEST_CASE("isolated wall cost of the step profile") {
  OneDProfile step;
  step.H = 1.0;
  step.a = 0.0;
  step.M = 0.0;
  step.y = {-1.0, 0.0, 1.0};
  step.u2 = {0.0, 0.0, 0.0};
  step.sign = {-1, 1};
  const double eps = 1e-3;
  const Profile1D p = recovery_profile(step, eps, default_recovery_points(eps, 1.0));
  const EnergyBreakdown e = eval_E_eps_1d(p, make_params(1, eps, 1, 1, 1, 0));
  CHECK(e.bulk_div == 0.0);
  CHECK(std::abs(e.total - 4.0 / 3.0) < 0.01 * 4.0 / 3.0);
}

TEST_CASE("recovery energies decrease towards the minimum") {
  const auto rows = eps_ladder(1.0, 1.0, 0.0, {1e-2, 5e-3, 2.5e-3});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.gap > 0.0);
  CHECK(rows[1].gap < rows[0].gap);
  CHECK(rows[2].gap < rows[1].gap);
  // the gap is first order in eps for this construction: 3.69e-2, 1.86e-2, 9.54e-3
  CHECK(rows[0].gap == doctest::Approx(3.69e-2).epsilon(0.01));
  CHECK(rows[2].gap == doctest::Approx(9.54e-3).epsilon(0.01));
}
