#include "doctest.h"

#include "nematic/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace nematic;

TEST_CASE("params reject out-of-range values with a named invariant") {
  Params p;
  CHECK(p.violations().empty());
  p.a = 1.0;
  REQUIRE(p.violations().size() == 1);
  CHECK(p.violations()[0] == "a must lie in [0,1)");
  p.eps = 0.0;
  p.H = -1.0;
  CHECK(p.violations().size() == 3);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS(make_params(1, 0.01, 1, 1, 1, -0.1));
  CHECK_NOTHROW(make_params(1, 0.01, 1, 1, 1, 0.5));
}

TEST_CASE("rectangle grid wraps the periodic direction only") {
  const Grid2D g = Grid2D::rectangle(-1, 1, 0, 2, 8, 4, true);
  CHECK(g.nodes_x() == 8);
  CHECK(g.nodes_y() == 5);
  CHECK(g.node_count() == 40);
  CHECK(g.index(8, 2) == g.index(0, 2));
  CHECK(g.index(-1, 0) == g.index(7, 0));
  CHECK_THROWS_AS(g.index(0, 5), std::out_of_range);
  CHECK(g.position(8, 0).x == doctest::Approx(1.0));
  CHECK(g.on_boundary(3, 0));
  CHECK(g.on_boundary(3, 4));
  CHECK_FALSE(g.on_boundary(0, 2));
  CHECK_THROWS(Grid2D::rectangle(0, 1, 0, 1, 3, 8, false));
}

TEST_CASE("polar grid is periodic in theta with a closed seam") {
  const Grid2D g = Grid2D::polar(0.5, 1.0, 4, 16);
  CHECK(g.nodes_x() == 5);
  CHECK(g.nodes_y() == 16);
  const Vec2 a = g.position(2, 16), b = g.position(2, 0);
  CHECK(a.x == doctest::Approx(b.x));
  CHECK(a.y == doctest::Approx(b.y).epsilon(1e-12));
  CHECK(g.on_boundary(0, 3));
  CHECK(g.on_boundary(4, 3));
  CHECK_FALSE(g.on_boundary(2, 0));
  CHECK(Grid2D::disc_cutoff(0.6) == doctest::Approx(1e-3));
  CHECK(Grid2D::disc_cutoff(4.096) == doctest::Approx(4e-3));
  CHECK(Grid2D::disc(0.6, 8, 16).x0() == doctest::Approx(1e-3));
}

TEST_CASE("sampling rejects non-finite values") {
  const Grid2D g = Grid2D::rectangle(0, 1, 0, 1, 4, 4, false);
  const Field2D f = sample_analytic(g, [](Vec2 p) { return Vec2{p.x, p.y}; });
  CHECK(f.at(4, 4).x == doctest::Approx(1.0));
  CHECK_THROWS_AS(sample_analytic(g, [](Vec2) { return Vec2{std::numeric_limits<double>::quiet_NaN(), 0}; }),
                  std::domain_error);
}

TEST_CASE("field csv has the documented header and full precision") {
  const Grid2D g = Grid2D::rectangle(0, 1, 0, 1, 4, 4, false);
  const Field2D f = sample_analytic(g, [](Vec2) { return Vec2{1.0 / 3.0, 0}; });
  std::ostringstream s;
  write_field_csv(s, f);
  const std::string out = s.str();
  CHECK(out.rfind("x,y,u1,u2\n", 0) == 0);
  CHECK(out.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("jump segments check unit traces and the normal component") {
  JumpSegment seg;
  const Vec2 n{0, 1};
  seg.vertices.push_back({{0, 0}, n, unit_from_angle(0.3), unit_from_angle(kPi - 0.3)});
  CHECK(seg.check().empty());
  seg.vertices.push_back({{1, 0}, n, unit_from_angle(0.3), unit_from_angle(0.2)});
  CHECK(seg.check().find("normal component") != std::string::npos);
  seg.vertices.back() = {{1, 0}, n, Vec2{2, 0}, Vec2{2, 0}};
  CHECK(seg.check().find("not unit") != std::string::npos);
}
