#pragma once

#include "nematic/characteristics.hpp"
#include "nematic/core.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace nematic {

struct WallIntegrand {
  double jump_cube = 0.0;  // (1/6)|u+ - u-|^3
  double sin_form = 0.0;   // (4/3)(1 - (u.nu)^2)^{3/2}
};

// Throws std::invalid_argument if the normal components differ by more than 1e-8.
WallIntegrand wall_integrand(Vec2 plus, Vec2 minus, Vec2 normal);
double wall_cost_density(Vec2 plus, Vec2 minus, Vec2 normal);

// Piecewise-linear element of the structured-grid triangulation.
struct P1Element {
  std::array<std::size_t, 3> node{};
  std::array<Vec2, 3> grad{};  // gradients of the hat functions
  double area = 0.0;
};

// Two triangles per cell, diagonals alternating in a checkerboard; periodic seams wrap.
std::vector<P1Element> triangulate(const Grid2D& grid);
// Lumped mass: one third of the adjacent triangle areas per node.
std::vector<double> lumped_mass(const Grid2D& grid, const std::vector<P1Element>& elements);

// E_eps of the piecewise-linear interpolant of the nodal values.
EnergyBreakdown eval_E_eps(const Field2D& field, const Params& params);
EnergyBreakdown eval_E_eps(const Field2D& field, const Params& params, const std::vector<P1Element>& elements,
                           const std::vector<double>& mass);

struct Profile1D {
  std::vector<double> y;
  std::vector<Vec2> u;
};

// One-dimensional E_eps; throws if the end values miss (-sqrt(1-a^2), a) and (sqrt(1-a^2), a).
EnergyBreakdown eval_E_eps_1d(const Profile1D& profile, const Params& params);

// Piecewise-linear u2 on breakpoints; u1 = sign[k] * sqrt(1 - u2^2) on segment k.
struct OneDProfile {
  double H = 1.0;
  double a = 0.0;
  double M = 0.0;
  std::vector<double> y;
  std::vector<double> u2;
  std::vector<int> sign;

  double u2_at(double yy) const;
  Vec2 u_at(double yy) const;
};

EnergyBreakdown eval_E0_1d(const OneDProfile& profile, const Params& params);

struct QuadratureOptions {
  int panels_s = 64;
  int panels_t = 64;
  int order = 8;
  int wall_panels = 64;
  int wall_order = 8;
};

// Bulk (L/2) int v^2 over a family, computed in (s, t/t_star) coordinates, one copy.
double family_bulk_integral(const CharacteristicFamily& family, double L, const QuadratureOptions& q);
// (1/6) int |u+ - u-|^3 along one copy of a wall, plus its tail.
double wall_integral(const WallPiece& wall, const QuadratureOptions& q);

EnergyBreakdown eval_E0_piecewise(const PiecewiseCriticalField& field, const Params& params,
                                  const QuadratureOptions& q = {});

struct CriticalityReport {
  double thetav = 0.0;      // sup |-sin th th_x + cos th th_y - v|
  double vconstant = 0.0;   // sup |u_perp . grad v|
  double wall_jump = 0.0;   // sup |L [div u] + 4 sqrt(1-w^2) w| on interior walls
  double wall_boundary = 0.0;
  double wall_motion = 0.0;  // sup |lhs - rhs| of the wall stationarity condition
  int samples = 0;
  int unresolved = 0;  // lattice points whose stencil leaves the local (s, t) patch
};

struct ResidualOptions {
  int ns = 16;
  int nt = 16;
  int wall_samples = 256;
  double h = 1e-4;
};

CriticalityReport criticality_residuals(const PiecewiseCriticalField& field, const Params& params,
                                        const ResidualOptions& opt = {});

void write_energy_json(std::ostream& out, const EnergyBreakdown& e, const Params& params);

}  // namespace nematic
