#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nematic {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
// rotation by +90 degrees
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Thrown by iterative solvers; callers may catch it to try another branch.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  double L = 1.0;
  double eps = 0.01;
  double H = 1.0;
  double T = 1.0;
  double R = 1.0;
  double a = 0.0;

  // Throws std::invalid_argument naming the first violated range.
  void validate() const;
  // Collects every violated range instead of stopping at the first.
  std::vector<std::string> violations() const;
};

Params make_params(double L, double eps, double H, double T, double R, double a);

enum class GridKind { rectangle, polar };

// Structured grid. Index i runs along x (rectangle) or r (polar), j along y or theta.
// Periodic directions store no duplicate seam column.
class Grid2D {
 public:
  static Grid2D rectangle(double x0, double x1, double y0, double y1, int nx, int ny, bool periodic_x);
  static Grid2D polar(double r_in, double r_out, int nr, int ntheta);
  // Disc of radius R as an annulus with a small inner hole.
  static Grid2D disc(double R, int nr, int ntheta);
  static double disc_cutoff(double R);

  GridKind kind() const { return kind_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  bool periodic_x() const { return periodic_x_; }
  bool periodic_y() const { return kind_ == GridKind::polar; }
  int nodes_x() const { return periodic_x_ ? nx_ : nx_ + 1; }
  int nodes_y() const { return periodic_y() ? ny_ : ny_ + 1; }
  std::size_t node_count() const {
    return static_cast<std::size_t>(nodes_x()) * static_cast<std::size_t>(nodes_y());
  }
  std::size_t index(int i, int j) const;
  double spacing_x() const { return (x1_ - x0_) / nx_; }
  double spacing_y() const { return (y1_ - y0_) / ny_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }

  // Logical coordinate (x or r, y or theta); i, j may run one past the seam.
  double coord_x(int i) const { return x0_ + i * spacing_x(); }
  double coord_y(int j) const { return y0_ + j * spacing_y(); }
  // Cartesian position of logical node (i, j); seam-wrapped indices give the unwrapped position.
  Vec2 position(int i, int j) const;
  Vec2 node(std::size_t k) const;
  int node_i(std::size_t k) const { return static_cast<int>(k % static_cast<std::size_t>(nodes_x())); }
  int node_j(std::size_t k) const { return static_cast<int>(k / static_cast<std::size_t>(nodes_x())); }
  // Nodes whose value is fixed by Dirichlet data: non-periodic edges.
  bool on_boundary(int i, int j) const;

 private:
  GridKind kind_ = GridKind::rectangle;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
  int nx_ = 4, ny_ = 4;
  bool periodic_x_ = false;
};

struct Field2D {
  Grid2D grid;
  std::vector<Vec2> values;

  Vec2& at(int i, int j) { return values[grid.index(i, j)]; }
  const Vec2& at(int i, int j) const { return values[grid.index(i, j)]; }
};

Field2D sample_analytic(const Grid2D& grid, const std::function<Vec2(Vec2)>& f);

// Header x,y,u1,u2; rows ordered by node index (j outer, i inner).
void write_field_csv(std::ostream& out, const Field2D& field);
void write_field_csv(const std::string& path, const Field2D& field);

// One sampled point of a jump curve. The normal points from the minus side to the plus side.
struct JumpVertex {
  Vec2 p;
  Vec2 normal;
  Vec2 plus;
  Vec2 minus;
};

struct JumpSegment {
  std::vector<JumpVertex> vertices;
  bool on_boundary = false;

  // Empty when valid; otherwise the first offending vertex and reason.
  std::string check() const;
};

struct EnergyBreakdown {
  double bulk_div = 0.0;
  double wall_interior = 0.0;
  double wall_boundary = 0.0;
  double grad = 0.0;
  double potential = 0.0;
  double total = 0.0;

  void sum() { total = bulk_div + wall_interior + wall_boundary + grad + potential; }
};

}  // namespace nematic
