#pragma once

#include "nematic/energy.hpp"

#include <vector>

namespace nematic {

// f(m) = (L/H)(m - a)^2 + (4/3)(1 - m^2)^{3/2}
double wall_height_objective(double m, double L_over_H, double a);
double wall_height_slope(double m, double L_over_H, double a);

// Minimizing wall height M in [a, 1].
double solve_M(double L, double H, double a);
// Minimal one-dimensional energy per unit length in x.
double min_energy_1d(double L, double H, double a);
// a = 0 closed form: l - l^3/12 below l = 2, 4/3 above.
double min_energy_1d_closed(double L_over_H);

// Tent for u2 with the jump of u1 at y = 0; the step (u2 = 0) when a = 0 and L/H > 2.
OneDProfile minimizer_profile(double L, double H, double a);

// Smooth profile on n uniform intervals of [-H, H]: the minimizer with u1 replaced by a
// tanh heteroclinic in |y| < eps^{5/6}, blended linearly back out to 2 eps^{5/6}.
Profile1D recovery_profile(const OneDProfile& sharp, double eps, int n);
Profile1D recovery_profile_1d(double eps, double L, double H, double a, int n);
// Grid size used when none is given: resolves the tanh core with about 100 points per eps.
int default_recovery_points(double eps, double H);

struct LadderRow {
  double eps = 0.0;
  int n = 0;
  double energy = 0.0;
  double gap = 0.0;  // energy - minimum
};
std::vector<LadderRow> eps_ladder(double L, double H, double a, const std::vector<double>& eps);

}  // namespace nematic
