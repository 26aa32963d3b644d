#pragma once

#include "nematic/core.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace nematic {

struct Polyline {
  double level = 0.0;
  bool closed = false;
  std::vector<Vec2> points;
};

// Level curves of nodal values by marching squares on the logical grid, mapped to Cartesian
// positions. With a period (angles), cells whose corner values spread over more than half a
// period are skipped instead of contouring the branch cut.
std::vector<Polyline> marching_squares(const Grid2D& grid, const std::vector<double>& values, double level,
                                       std::optional<double> period = std::nullopt);

// Header contour,level,x,y.
void write_contours_csv(std::ostream& out, const std::vector<Polyline>& lines);

}  // namespace nematic
