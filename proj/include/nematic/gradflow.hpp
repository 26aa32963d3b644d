#pragma once

#include "nematic/contour.hpp"
#include "nematic/core.hpp"
#include "nematic/energy.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nematic {

// Grid, parameters and Dirichlet data of one flow problem. Nodes with fixed[k] keep the
// value of boundary.values[k]; all other nodes are free (including the inner ring of a disc).
struct FlowSetup {
  Grid2D grid;
  Params params;
  std::vector<char> fixed;
  Field2D boundary;
  std::string description;
};

// (-T, T) x (-H, H), periodic in x, u = (-+sqrt(1-a^2), a) on y = -+H.
FlowSetup rectangle_setup(const Params& p, int nx, int ny);
// Disc of radius p.R with a free inner cutoff ring; bc is evaluated on r = R.
FlowSetup disc_setup(const Params& p, int nr, int ntheta, const std::function<Vec2(Vec2)>& bc,
                     std::string description);
// 1 < r < p.R with u = -e_theta inside and e_theta outside.
FlowSetup annulus_setup(const Params& p, int nr, int ntheta);

// Named disc data: "tangential", "hedgehog", "deg-minus-one".
std::function<Vec2(Vec2)> disc_boundary_data(const std::string& name, double R);

Field2D random_init(const FlowSetup& setup, std::uint64_t seed);
// Rectangle: u2 = a, u1 linear in y; polar grids: the boundary data scaled radially.
Field2D extension_init(const FlowSetup& setup);

struct FlowOptions {
  double dt0 = 0.0;  // 0 selects eps / 4
  double dt_max = 1e3;
  double dt_min = 1e-14;
  double tol = 1e-5;
  double max_time = 1e5;
  int max_steps = 100000;
  double stabilization = 0.0;  // extra implicit shift, in units of 1/eps
  bool linearize = true;       // implicit positive part of the reaction Jacobian; off gives a plain shift
  int grow_after = 5;          // consecutive accepted steps before dt doubles
};

struct TracePoint {
  double time = 0.0;
  EnergyBreakdown energy;
};

struct FlowState {
  Field2D field;
  double time = 0.0;
  double dt = 0.0;
  std::vector<TracePoint> trace;
  int accepted = 0;
  int rejected = 0;
  int streak = 0;
  double residual = 0.0;
  bool converged = false;
  bool max_time_reached = false;
};

class GradientFlow {
 public:
  GradientFlow(FlowSetup setup, FlowOptions options = {});
  ~GradientFlow();
  GradientFlow(const GradientFlow&) = delete;
  GradientFlow& operator=(const GradientFlow&) = delete;

  const FlowSetup& setup() const { return setup_; }
  const FlowOptions& options() const { return options_; }
  const std::vector<double>& mass() const { return mass_; }

  EnergyBreakdown energy(const Field2D& field) const;
  // Derivative of the discrete energy with respect to each nodal value.
  std::vector<Vec2> gradient(const Field2D& field) const;
  // -M^{-1} grad, zero on fixed nodes.
  Field2D rhs(const Field2D& field) const;
  // sup norm of rhs over free nodes
  double residual(const Field2D& field) const;

  // Overwrites fixed nodes with their data and records the initial energy.
  FlowState start(Field2D init) const;
  // Advances by one accepted step, halving dt on energy increase. Throws NoConvergence on dt underflow.
  void step(FlowState& state);
  using Observer = std::function<void(const FlowState&)>;
  FlowState run_to_equilibrium(Field2D init, const Observer& on_step = {});

 private:
  struct Solver;
  void factor(double dt, const Field2D& field);
  std::array<double, 3> reaction_block(Vec2 u) const;
  std::vector<double> reaction(const Field2D& field) const;

  FlowSetup setup_;
  FlowOptions options_;
  std::vector<P1Element> elements_;
  std::vector<double> mass_;
  std::vector<int> free_index_;  // per node, -1 when fixed
  int n_free_ = 0;
  Eigen::SparseMatrix<double> A_;  // eps K + L D on all 2n unknowns
  Eigen::VectorXd fixed_load_;     // A applied to the fixed values, free rows
  Eigen::SparseMatrix<double> A_ff_;
  std::unique_ptr<Solver> solver_;
  double factored_dt_ = -1.0;
};

struct Diagnostics {
  std::vector<double> divergence;  // nodal, area-weighted from the elements
  std::vector<double> angle;       // atan2(u2, u1)
  std::vector<Polyline> div_contours;
  std::vector<Polyline> angle_contours;
};

Diagnostics diagnostics(const Field2D& field, const std::vector<double>& div_levels,
                        const std::vector<double>& angle_levels);

// Relaxes init through a decreasing eps schedule, ending at setup.params.eps. Random data at small eps
// freezes into metastable multi-wall states; coarse eps lets them annihilate first.
FlowState run_continuation(const FlowSetup& setup, const std::vector<double>& eps_schedule, Field2D init,
                           const FlowOptions& options = {});

std::vector<double> nodal_divergence(const Field2D& field);

// Nodes inside wall cores: 1 - |u|^2 above the threshold.
std::vector<Vec2> wall_core_points(const Field2D& field, double deficit);

// Polar grids: on every ring, the nodes where 1 - |u|^2 has a strict local maximum in theta above the
// threshold. These trace the centre lines of the walls crossing the rings.
struct RingMaximum {
  int ring = 0;
  Vec2 p;
  double deficit = 0.0;
};
std::vector<RingMaximum> ring_deficit_maxima(const Field2D& field, double threshold);

}  // namespace nematic
