#pragma once

#include "nematic/characteristics.hpp"
#include "nematic/core.hpp"

namespace nematic {

// u = e_theta on the disc of radius R: radii as characteristics, v = 0.
PiecewiseCriticalField tangential_solution(double R);

// u = r e_r + sign sqrt(1 - r^2) e_theta on the unit disc; div u = 2.
Vec2 hedgehog_field(int sign, Vec2 p);
// Characteristics are radius-1/2 circles from the boundary to the centre.
PiecewiseCriticalField hedgehog_solution(int sign);

// Divergence on the first-octant arcs launched from the x-axis between 0 and (sqrt2 - 1)R.
double region3_v0(double s, double L);
// Divergence on the arcs launched from the terminal arc of the outer region.
double region2_v0(double s, double R, double L);

struct DegMinusOneSolution {
  double R = 0.6;
  double L = 0.5;
  double s0 = 0.0;
  CharacteristicFamily region1;  // circles of radius R from the x-axis, s in [s0, R]
  CharacteristicFamily region2;  // from the terminal arc of region 1
  CharacteristicFamily region3;  // from the x-axis, s in [0, s0]
  WallPiece wall3;               // diagonal segment reached by region 3
  WallPiece wall2;               // diagonal segment reached by region 2
  PiecewiseCriticalField field;  // octant pieces with their symmetry multiplicities
};

DegMinusOneSolution build_deg_minus_one(double R, double L);

struct DiscSample {
  Vec2 u;
  double v = 0.0;
  bool on_jump = false;
  Vec2 u_other;  // trace on the far side of a diagonal, when on_jump
  double v_other = 0.0;
};

// Evaluates the construction anywhere in the open disc by reflection into the first octant.
DiscSample deg_minus_one_field_eval(const DegMinusOneSolution& sol, Vec2 p);

// sup |L v + cos 2 theta| over n arrival points on the diagonal.
double deg_minus_one_diagonal_residual(const DegMinusOneSolution& sol, int n);

}  // namespace nematic
