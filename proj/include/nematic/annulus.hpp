#pragma once

#include "nematic/characteristics.hpp"
#include "nematic/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nematic {

// Radial profile u = p(r) e_r + q(r) e_theta on 1 < r < R with one circular wall at rho.
// q = -sqrt(1-p^2) inside the wall and +sqrt(1-p^2) outside.
double radial_p(double r, double rho, double a, double R);
double radial_q(double r, double rho, double a, double R);
double radial_div(double r, double rho, double a, double R);

double annulus_energy(double rho, double a, double R, double L);

// Residuals of the two wall conditions for a circular wall.
double annulus_nbc_residual(double rho, double a, double R, double L);
double annulus_jump_residual(double rho, double a, double R, double L);

// Unique root rho^2 in (1, R^2) of the wall-position quadratic for given a in (0, 1/2].
double quadratic_rho2(double a, double R);
double annulus_a_squared(double rho, double R);
double g_RL(double z, double R, double L);

struct AnnulusRadialSolution {
  double R = 2.0;
  double L = 1.0;
  double rho = 1.0;
  double a = 0.0;
  bool wall_at_boundary = false;
  double energy = 0.0;
  double nbc_residual = 0.0;
  double jump_residual = 0.0;
  int sign_changes = 0;
  std::string regime;
};

// Root of g_{R,L} with z = rho^2 in (1, 2R^2/(1+R^2)), i.e. a <= 1/2.
std::optional<AnnulusRadialSolution> solve_interior_wall(double R, double L);

// Every root of g_{R,L} on the whole admissible range z in (1, R), where a^2 runs over (0, 1).
std::vector<AnnulusRadialSolution> radial_critical_walls(double R, double L);

// Lowest-energy radial single-wall state among the critical interior walls and the inner-boundary wall.
AnnulusRadialSolution annulus_minimizer(double R, double L);

double small_L_interior_bound(double R);

// Characteristics-and-walls representation of the radial field; rho = 1 or rho = R give
// the states with a boundary wall (u = e_theta and u = -e_theta).
PiecewiseCriticalField annulus_field(double rho, double a, double R);

}  // namespace nematic
