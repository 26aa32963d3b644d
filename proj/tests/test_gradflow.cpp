#include "doctest.h"

#include "nematic/disc.hpp"
#include "nematic/gradflow.hpp"

#include <cmath>
#include <random>

using namespace nematic;

namespace {

double directional_fd(const GradientFlow& g, const Field2D& u, const std::vector<Vec2>& d, double h) {
  Field2D a = u, b = u;
  for (std::size_t k = 0; k < d.size(); ++k) {
    a.values[k] += d[k] * h;
    b.values[k] += d[k] * (-h);
  }
  return (g.energy(a).total - g.energy(b).total) / (2 * h);
}

}  // namespace

TEST_CASE("constant field with matching data is an equilibrium") {
  const Params p = make_params(0.7, 0.05, 1, 1, 1.0, 0);
  FlowSetup s = disc_setup(p, 8, 32, [](Vec2) { return Vec2{0.6, 0.8}; }, "constant");
  GradientFlow g(s);
  Field2D u = sample_analytic(s.grid, [](Vec2) { return Vec2{0.6, 0.8}; });
  // roundoff divided by the small masses at the inner ring
  CHECK(g.residual(u) < 1e-6);
  CHECK(g.energy(u).total == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("gradient matches a directional finite difference") {
  for (int pass = 0; pass < 2; ++pass) {
    const Params p = make_params(1.3, 0.05, 1, 0.5, 0.6, 0.2);
    const FlowSetup s = pass == 0 ? rectangle_setup(p, 12, 16) : disc_setup(p, 8, 24, disc_boundary_data("deg-minus-one", 0.6), "d");
    GradientFlow g(s);
    const Field2D u = random_init(s, 5);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n01;
    std::vector<Vec2> d(u.values.size());
    for (std::size_t k = 0; k < d.size(); ++k)
      if (!s.fixed[k]) d[k] = {n01(rng), n01(rng)};
    const auto grad = g.gradient(u);
    double exact = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) exact += dot(grad[k], d[k]);
    const double fd = directional_fd(g, u, d, 1e-5);
    CHECK(std::abs(fd - exact) < 1e-5 * std::abs(exact));
  }
}

TEST_CASE("energy trace is monotone and Dirichlet data stay fixed") {
  const Params p = make_params(0.5, 0.05, 1, 0.5, 1, 0.3);
  const FlowSetup s = rectangle_setup(p, 16, 32);
  GradientFlow g(s);
  FlowState st = g.start(random_init(s, 3));
  for (int k = 0; k < 1000 && !st.converged; ++k) {
    g.step(st);
    if (g.residual(st.field) < 1e-6) break;
  }
  REQUIRE(st.trace.size() > 10);
  for (std::size_t k = 1; k < st.trace.size(); ++k)
    CHECK(st.trace[k].energy.total <= st.trace[k - 1].energy.total + 1e-12 * std::max(1.0, st.trace[k - 1].energy.total));
  for (std::size_t k = 0; k < s.fixed.size(); ++k)
    if (s.fixed[k]) CHECK(st.field.values[k] == s.boundary.values[k]);
}

TEST_CASE("rhs vanishes on fixed nodes") {
  const Params p = make_params(1, 0.05, 1, 1, 0.6, 0);
  const FlowSetup s = disc_setup(p, 8, 24, disc_boundary_data("hedgehog", 0.6), "h");
  GradientFlow g(s);
  const Field2D r = g.rhs(random_init(s, 1));
  for (std::size_t k = 0; k < s.fixed.size(); ++k)
    if (s.fixed[k]) CHECK(r.values[k] == Vec2{0, 0});
}

TEST_CASE("nodal divergence of the hedgehog and of e_theta") {
  const Grid2D g = Grid2D::polar(0.1, 0.95, 64, 256);
  const Field2D h = sample_analytic(g, [](Vec2 q) { return hedgehog_field(1, q); });
  const Field2D t = sample_analytic(g, [](Vec2 q) { return perp(q / norm(q)); });
  const auto dh = nodal_divergence(h), dt = nodal_divergence(t);
  for (int i = 8; i < 56; i += 8)
    for (int j = 0; j < 256; j += 32) {
      CHECK(dh[g.index(i, j)] == doctest::Approx(2.0).epsilon(0.02));
      CHECK(std::abs(dt[g.index(i, j)]) < 0.02);
    }
}

TEST_CASE("wall core detection and diagnostics") {
  const Grid2D g = Grid2D::rectangle(-1, 1, -1, 1, 32, 32, false);
  const Field2D f = sample_analytic(g, [](Vec2 q) { return Vec2{std::tanh(q.y / 0.1), 0.0}; });
  for (const Vec2& p : wall_core_points(f, 0.5)) CHECK(std::abs(p.y) < 0.1);
  CHECK_FALSE(wall_core_points(f, 0.5).empty());
  const Diagnostics d = diagnostics(f, {0.0}, {kPi / 2});
  CHECK(d.divergence.size() == g.node_count());
}

TEST_CASE("disc boundary data") {
  CHECK(norm(disc_boundary_data("hedgehog", 1)(Vec2{0, 2}) - Vec2{0, 1}) < 1e-15);
  CHECK(norm(disc_boundary_data("tangential", 1)(Vec2{2, 0}) - Vec2{0, 1}) < 1e-15);
  CHECK(norm(disc_boundary_data("deg-minus-one", 0.6)(Vec2{0, 0.6}) - Vec2{0, -1}) < 1e-15);
  CHECK_THROWS(disc_boundary_data("spiral", 1));
}

TEST_CASE("seeded random initial data is reproducible") {
  const FlowSetup s = rectangle_setup(make_params(1, 0.05, 1, 1, 1, 0), 8, 8);
  CHECK(random_init(s, 4).values == random_init(s, 4).values);
  CHECK(random_init(s, 4).values != random_init(s, 5).values);
}

TEST_CASE("plain shift scheme stays monotone too") {
  const Params p = make_params(0.5, 0.05, 1, 0.5, 1, 0);
  const FlowSetup s = rectangle_setup(p, 8, 16);
  FlowOptions o;
  o.linearize = false;
  o.stabilization = 3.0;
  GradientFlow g(s, o);
  FlowState st = g.start(random_init(s, 4));
  for (int k = 0; k < 200; ++k) g.step(st);
  for (std::size_t k = 1; k < st.trace.size(); ++k)
    CHECK(st.trace[k].energy.total <= st.trace[k - 1].energy.total + 1e-12 * std::max(1.0, st.trace[k - 1].energy.total));
}

TEST_CASE("continuation ends at the target eps and rejects increasing schedules") {
  const Params p = make_params(0.5, 0.05, 1, 0.25, 1, 0);
  const FlowSetup s = rectangle_setup(p, 8, 64);
  FlowOptions o;
  o.tol = 1e-4;
  const FlowState st = run_continuation(s, {0.2, 0.1}, random_init(s, 2), o);
  GradientFlow g(s, o);
  // the returned state is an equilibrium for the final eps, not for a coarser stage
  CHECK(std::abs(g.energy(st.field).total - st.trace.back().energy.total) < 1e-12);
  CHECK_THROWS_AS(run_continuation(s, {0.1, 0.2}, random_init(s, 2), o), std::invalid_argument);
}

TEST_CASE("ring maxima of the deficit follow a straight wall") {
  const Grid2D grid = Grid2D::disc(1.0, 16, 64);
  // deficit peaked on the x-axis, both half lines
  Field2D f = sample_analytic(grid, [](Vec2 q) {
    const double d = 0.5 * std::exp(-q.y * q.y / 0.01);
    return Vec2{std::sqrt(1.0 - d), 0.0};
  });
  const auto m = ring_deficit_maxima(f, 0.05);
  REQUIRE(!m.empty());
  for (const auto& r : m) CHECK(std::abs(r.p.y) < 1e-12);
  CHECK_THROWS_AS(ring_deficit_maxima(Field2D{Grid2D::rectangle(0, 1, 0, 1, 4, 4, false), std::vector<Vec2>(25)}, 0.1),
                  std::invalid_argument);
}
