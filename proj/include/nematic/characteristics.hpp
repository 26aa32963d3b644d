#pragma once

#include "nematic/core.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nematic {

// Below this |v0| the arc is evaluated as a straight line.
inline constexpr double kStraightLineThreshold = 1e-8;

struct ArcSample {
  Vec2 p;
  double theta = 0.0;
  double v = 0.0;
};

// Circular arc along which the director angle grows linearly, theta = theta0 + v0 * tau,
// where tau is the signed arc parameter. direction = -1 traverses the arc backwards,
// so the point at travel time t is the canonical point at tau = -t.
struct CharacteristicArc {
  Vec2 origin;
  double theta0 = 0.0;
  double v0 = 0.0;
  double t_max = 0.0;
  int direction = 1;
};

// Canonical arc point at signed parameter tau; the tangent there is (-sin theta, cos theta).
ArcSample arc_eval(Vec2 origin, double theta0, double v0, double tau);

// Range-checked point at travel time t in [0, t_max].
ArcSample arc_point(const CharacteristicArc& arc, double t);

struct TangentNormal {
  Vec2 tau;  // (-sin theta, cos theta), orthogonal to the director
  Vec2 nu;   // the director (cos theta, sin theta), tau rotated by -90 degrees
};
TangentNormal arc_tangent_normal(const CharacteristicArc& arc, double t);

struct Seed {
  Vec2 origin;
  double theta0 = 0.0;
  double v0 = 0.0;
};

struct CharacteristicFamily {
  std::string label;
  double s_min = 0.0;
  double s_max = 1.0;
  int direction = 1;
  std::function<Seed(double)> seed;
  std::function<double(double)> t_star;

  CharacteristicArc arc(double s) const;
  // Point at (s, t) without range checks; t may exceed t_star.
  ArcSample point(double s, double t) const;
};

// Family whose seeds and terminal times are known only at samples; monotone cubic in s.
CharacteristicFamily sampled_family(std::string label, const std::vector<double>& s, const std::vector<Seed>& seeds,
                                    const std::vector<double>& t_star, int direction);

struct FamilyCoords {
  double s = 0.0;
  double t = 0.0;
};

// Damped Newton inversion of (s, t) -> point. Throws NoConvergence when the point is not covered.
FamilyCoords invert_family(const CharacteristicFamily& family, Vec2 target,
                           std::optional<FamilyCoords> guess = std::nullopt);

struct JacobianValue {
  double det = 0.0;
  bool one_sided = false;
};

// det d(x,y)/d(s,t); t-derivative analytic, s-derivative by second-order differences.
JacobianValue family_jacobian(const CharacteristicFamily& family, double s, double t);

struct FoliationReport {
  double min_jacobian = 0.0;  // smallest |det|
  double max_jacobian = 0.0;
  bool sign_consistent = true;
  int crossings = 0;
};

FoliationReport check_foliation(const CharacteristicFamily& family, int ns, int nt);

// Header s,t,x,y,theta,v on an ns x nt lattice (t from 0 to t_star).
void write_family_csv(std::ostream& out, const CharacteristicFamily& family, int ns, int nt);

// Trace data of a jump curve at one parameter value. normal points from the minus side to
// the plus side; on the domain boundary minus is the interior trace and plus the boundary datum.
struct WallPoint {
  Vec2 p;
  Vec2 normal;
  Vec2 plus;
  Vec2 minus;
  double div_plus = 0.0;
  double div_minus = 0.0;
};

struct WallPiece {
  std::string label;
  double p_min = 0.0;
  double p_max = 1.0;
  std::function<WallPoint(double)> eval;
  double multiplicity = 1.0;
  bool on_boundary = false;
  // Closed-form wall energy of an unbounded continuation beyond p_max, per copy.
  double tail_energy = 0.0;

  // |d p / d param| by central differences (one-sided at the ends).
  double speed(double param) const;
  JumpSegment sample(int n) const;
};

struct FamilyPiece {
  CharacteristicFamily family;
  double multiplicity = 1.0;
};

struct PiecewiseCriticalField {
  std::string domain;
  std::vector<FamilyPiece> families;
  std::vector<WallPiece> walls;
};

}  // namespace nematic
