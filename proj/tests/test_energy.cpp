#include "doctest.h"

#include "nematic/disc.hpp"
#include "nematic/energy.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace nematic;

TEST_CASE("cubed jump equals the sine form when the normal component is continuous") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi), w(-1.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 n = unit_from_angle(ang(rng));
    const double c = w(rng), b = std::sqrt(1.0 - c * c);
    const Vec2 minus = n * c + perp(n) * b, plus = n * c - perp(n) * b;
    const WallIntegrand wi = wall_integrand(plus, minus, n);
    CHECK(std::abs(wi.jump_cube - wi.sin_form) < 1e-12);
  }
}

TEST_CASE("wall integrand rejects a jump in the normal component") {
  CHECK_THROWS_AS(wall_integrand(unit_from_angle(0.3), unit_from_angle(0.5), {0, 1}), std::invalid_argument);
  CHECK(wall_cost_density({1, 0}, {-1, 0}, {0, 1}) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("constant unit field has zero relaxed energy") {
  const Grid2D g = Grid2D::rectangle(0, 1, 0, 1, 16, 16, false);
  const Field2D f = sample_analytic(g, [](Vec2) { return unit_from_angle(0.9); });
  const EnergyBreakdown e = eval_E_eps(f, make_params(1, 0.01, 1, 1, 1, 0));
  CHECK(e.total == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("P1 energy of a linear field") {
  // u = (x, 0): grad = 1/2 * 1, div = L/2 * 1 per unit area, potential exact for P1 only at nodes
  const Grid2D g = Grid2D::rectangle(0, 1, 0, 1, 8, 8, false);
  const Field2D f = sample_analytic(g, [](Vec2 p) { return Vec2{p.x, 0.0}; });
  const Params p = make_params(2.0, 0.1, 1, 1, 1, 0);
  const EnergyBreakdown e = eval_E_eps(f, p);
  CHECK(e.grad == doctest::Approx(0.5 * 0.1));
  CHECK(e.bulk_div == doctest::Approx(1.0));
  const auto elems = triangulate(g);
  CHECK(elems.size() == 128);
  double area = 0.0;
  for (double m : lumped_mass(g, elems)) area += m;
  CHECK(area == doctest::Approx(1.0));
}

TEST_CASE("sharp 1D profile without interior jump") {
  for (double a : {0.0, 0.3, 0.8}) {
    const Params p = make_params(1.7, 0.01, 1.3, 1, 1, a);
    OneDProfile prof;
    prof.H = p.H;
    prof.a = a;
    prof.M = 1.0;
    prof.y = {-p.H, 0.0, p.H};
    prof.u2 = {a, 1.0, a};
    prof.sign = {-1, 1};
    const EnergyBreakdown e = eval_E0_1d(prof, p);
    CHECK(e.bulk_div == doctest::Approx(p.L / p.H * (1 - a) * (1 - a)).epsilon(1e-14));
    CHECK(e.wall_interior == 0.0);
    CHECK(e.wall_boundary == 0.0);
  }
}

TEST_CASE("1D profiles are checked against the boundary values") {
  const Params p = make_params(1, 0.01, 1, 1, 1, 0.2);
  OneDProfile prof;
  prof.y = {-1, 1};
  prof.u2 = {0.2, 0.3};
  prof.sign = {1};
  CHECK_THROWS(eval_E0_1d(prof, p));
  Profile1D q;
  q.y = {-1, 1};
  q.u = {{1, 0}, {1, 0}};
  CHECK_THROWS(eval_E_eps_1d(q, p));
}

TEST_CASE("hedgehog energy is 2 pi L") {
  for (double L : {0.5, 1.0, 2.0}) {
    const EnergyBreakdown e = eval_E0_piecewise(hedgehog_solution(1), make_params(L, 0.01, 1, 1, 1, 0));
    CHECK(std::abs(e.total - 2 * kPi * L) < 1e-8);
  }
  const EnergyBreakdown e = eval_E0_piecewise(hedgehog_solution(-1), make_params(1, 0.01, 1, 1, 1, 0));
  CHECK(std::abs(e.total - 2 * kPi) < 1e-8);
}

TEST_CASE("tangential field costs nothing") {
  const EnergyBreakdown e = eval_E0_piecewise(tangential_solution(0.7), make_params(1, 0.01, 1, 1, 0.7, 0));
  CHECK(std::abs(e.total) < 1e-12);
}

TEST_CASE("criticality residuals of the hedgehog vanish under refinement") {
  const Params p = make_params(1, 0.01, 1, 1, 1, 0);
  ResidualOptions coarse, fine;
  coarse.h = 1e-4;
  fine.h = 1e-5;
  const CriticalityReport a = criticality_residuals(hedgehog_solution(1), p, coarse);
  const CriticalityReport b = criticality_residuals(hedgehog_solution(1), p, fine);
  CHECK(a.samples > 0);
  CHECK(a.vconstant < 1e-8);
  CHECK(a.thetav < 1e-4);
  CHECK(b.thetav < 0.05 * a.thetav);
}

TEST_CASE("criticality residuals of the degree -1 construction") {
  const DegMinusOneSolution sol = build_deg_minus_one(0.6, 0.5);
  const Params p = make_params(0.5, 0.01, 1, 1, 0.6, 0);
  PiecewiseCriticalField outer;
  outer.families = {{sol.region1, 1.0}, {sol.region3, 1.0}};
  const CriticalityReport r = criticality_residuals(outer, p);
  CHECK(r.thetav < 1e-6);
  CHECK(r.vconstant < 1e-6);
  // region II leaves its seed arc tangentially, so derivatives are steep; check convergence instead
  PiecewiseCriticalField inner;
  CharacteristicFamily f2 = sol.region2;
  f2.s_max *= 0.5;
  inner.families = {{f2, 1.0}};
  ResidualOptions coarse, fine;
  coarse.h = 1e-5;
  fine.h = 1e-6;
  const CriticalityReport a = criticality_residuals(inner, p, coarse);
  const CriticalityReport b = criticality_residuals(inner, p, fine);
  CHECK(b.thetav < 0.1 * a.thetav);
  CHECK(b.thetav < 1e-3);
  const CriticalityReport w = criticality_residuals(sol.field, p);
  CHECK(w.wall_jump < 1e-8);
}

TEST_CASE("energy json") {
  EnergyBreakdown e;
  e.bulk_div = 1.5;
  e.sum();
  std::ostringstream out;
  write_energy_json(out, e, Params{});
  CHECK(out.str().find("\"bulk_div\"") != std::string::npos);
  CHECK(out.str().find("\"total\"") != std::string::npos);
}
