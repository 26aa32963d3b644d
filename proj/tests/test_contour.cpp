#include "doctest.h"

#include "nematic/contour.hpp"

#include <cmath>
#include <sstream>

using namespace nematic;

TEST_CASE("level set of the radius is a closed circle") {
  const Grid2D g = Grid2D::rectangle(-1, 1, -1, 1, 64, 64, false);
  std::vector<double> r(g.node_count());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = norm(g.node(k));
  const auto lines = marching_squares(g, r, 0.5);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
  for (const Vec2& p : lines[0].points) CHECK(std::abs(norm(p) - 0.5) < 2e-3);
  CHECK(lines[0].points.size() > 100);
}

TEST_CASE("straight level line on a periodic grid") {
  const Grid2D g = Grid2D::rectangle(0, 1, 0, 1, 16, 16, true);
  std::vector<double> y(g.node_count());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = g.node(k).y;
  const auto lines = marching_squares(g, y, 0.3);
  REQUIRE(lines.size() == 1);
  for (const Vec2& p : lines[0].points) CHECK(p.y == doctest::Approx(0.3));
}

TEST_CASE("periodic values skip the branch cut") {
  const Grid2D g = Grid2D::polar(0.5, 1.0, 8, 64);
  std::vector<double> ang(g.node_count());
  for (std::size_t k = 0; k < ang.size(); ++k) ang[k] = std::atan2(g.node(k).y, g.node(k).x);
  const auto cut = marching_squares(g, ang, kPi - 1e-9, 2 * kPi);
  for (const auto& l : cut)
    for (const Vec2& p : l.points) CHECK(p.y >= -1e-9);
  const auto ray = marching_squares(g, ang, 0.5, 2 * kPi);
  REQUIRE(ray.size() == 1);
  for (const Vec2& p : ray[0].points) CHECK(std::atan2(p.y, p.x) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("contour csv") {
  std::ostringstream out;
  write_contours_csv(out, {Polyline{0.5, false, {{0, 0}, {1, 1}}}});
  CHECK(out.str().rfind("contour,level,x,y\n", 0) == 0);
}
