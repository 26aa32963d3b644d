#pragma once

#include "nematic/characteristics.hpp"
#include "nematic/energy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nematic {

// Residual of the period equation at scaled half-period Tt and l = L/H.
double period_residual(double Tt, double l);
// Root of the period equation in (tan(pi/8), 1).
double solve_Ttilde(double L_over_H);
// L/H recovered in closed form from Tt: x = 1/Tt, zeta = 2x(x^2-1)/(x^2+1)^2,
// Lambda = (1 - 2 zeta)/zeta^2, L/H = 2 Tt / sqrt(Lambda).
double L_over_H_from_Ttilde(double Tt);

// sin 2 theta at the foot of an arc launched from the y = 0 wall at distance s from x = 0.
double bottom_sin2theta(double s, double L);
// Arrival angle at x = 0 of the arc launched from the terminal characteristic at time s.
double region2_arrival_angle(double s, double alpha, double L);

struct CrossTieSolution {
  double L = 1.0;
  double H = 1.0;
  double L_over_H = 1.0;
  double T_tilde = 0.0;
  double T = 0.0;
  double alpha = 0.0;    // curvature of the terminal characteristic
  double t1_star = 0.0;  // its length from (0, H) to (T, 0)
  CharacteristicFamily region1;  // arcs from the top through (T, 0)
  CharacteristicFamily region2;  // arcs from the terminal characteristic to x = 0
  CharacteristicFamily region3;  // arcs from y = 0 to x = 0
  WallPiece wall_y0;
  WallPiece wall_x0_lower;  // reached by region 3
  WallPiece wall_x0_upper;  // reached by region 2
  // quarter cell (0,T) x (0,H) with the copy counts of the period cell
  PiecewiseCriticalField field;
};

CrossTieSolution build_crosstie(double L, double H);

// 128 x 128 panels of order 4 per region.
QuadratureOptions crosstie_quadrature();

EnergyBreakdown crosstie_energy(const CrossTieSolution& sol, const QuadratureOptions& q = crosstie_quadrature());
double crosstie_energy_per_length(const CrossTieSolution& sol, const QuadratureOptions& q = crosstie_quadrature());
double crosstie_energy_per_length(double L, double H, const QuadratureOptions& q = crosstie_quadrature());

struct CrossTieInvariants {
  double tangency = 0.0;          // |alpha t1* - theta3(T)|
  double terminal_arrival = 0.0;  // |y3(T, t3*(T)) - T|
  double wall_residual = 0.0;     // sup |L v + sin 2 theta| on the x = 0 and y = 0 walls
  bool theta2_increasing = true;
  bool v2_negative_decreasing = true;
  double alpha_t1 = 0.0;
  double min_radius_over_H = 0.0;
  double gamma_theta_jump = 0.0;  // max |theta+ - theta-| across the terminal characteristic
  double gamma_v_jump = 0.0;      // min |v+ - v-| there
  bool foliation[3] = {false, false, false};
};

CrossTieInvariants crosstie_invariants(const CrossTieSolution& sol, int samples = 512);

struct CrossTieSample {
  Vec2 u;
  double v = 0.0;
  int region = 0;
};
// Director anywhere in the plane, extended by reflections and 2T-periodicity in x.
CrossTieSample crosstie_field_eval(const CrossTieSolution& sol, Vec2 p);

struct SweepRow {
  double L_over_H = 0.0;
  double E_crosstie = 0.0;
  double E_1d = 0.0;
  double gap = 0.0;
};
std::vector<SweepRow> crosstie_sweep(double lmin, double lmax, double step, double H = 1.0,
                                     const QuadratureOptions& q = crosstie_quadrature());

struct CrossingResult {
  std::optional<double> L0;
  std::optional<double> L1;
  std::vector<SweepRow> scan;
  std::string message;
};
CrossingResult find_crossing(double H, double lmin = 0.5, double lmax = 3.0, double step = 0.01,
                             const QuadratureOptions& q = crosstie_quadrature());

// Explicit divergence-free cross-tie map of period 1 in x.
Vec2 remark_crosstie_map(double x, double y);
// Its walls on one period: y = 0, and x = 1/2 split at |y| = 1/2 and |y| = 8 with the tail in closed form.
std::vector<WallPiece> remark_crosstie_walls();
double remark_crosstie_energy(const QuadratureOptions& q = {});

}  // namespace nematic
