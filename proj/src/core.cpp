#include "nematic/core.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nematic {

std::vector<std::string> Params::violations() const {
  std::vector<std::string> out;
  if (!(L > 0) || !std::isfinite(L)) out.emplace_back("L must be > 0");
  if (!(eps > 0) || !std::isfinite(eps)) out.emplace_back("eps must be > 0");
  if (!(H > 0) || !std::isfinite(H)) out.emplace_back("H must be > 0");
  if (!(T > 0) || !std::isfinite(T)) out.emplace_back("T must be > 0");
  if (!(R > 0) || !std::isfinite(R)) out.emplace_back("R must be > 0");
  if (!(a >= 0.0 && a < 1.0)) out.emplace_back("a must lie in [0,1)");
  return out;
}

void Params::validate() const {
  auto v = violations();
  if (!v.empty()) throw std::invalid_argument(v.front());
}

Params make_params(double L, double eps, double H, double T, double R, double a) {
  Params p{L, eps, H, T, R, a};
  p.validate();
  return p;
}

Grid2D Grid2D::rectangle(double x0, double x1, double y0, double y1, int nx, int ny, bool periodic_x) {
  if (nx < 4 || ny < 4) throw std::invalid_argument("grid counts too small (need nx, ny >= 4)");
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("invalid rectangle extents");
  Grid2D g;
  g.kind_ = GridKind::rectangle;
  g.x0_ = x0;
  g.x1_ = x1;
  g.y0_ = y0;
  g.y1_ = y1;
  g.nx_ = nx;
  g.ny_ = ny;
  g.periodic_x_ = periodic_x;
  return g;
}

Grid2D Grid2D::polar(double r_in, double r_out, int nr, int ntheta) {
  if (nr < 4 || ntheta < 4) throw std::invalid_argument("grid counts too small (need nr, ntheta >= 4)");
  if (!(r_in >= 0) || !(r_out > r_in)) throw std::invalid_argument("invalid polar extents (need 0 <= r_in < r_out)");
  Grid2D g;
  g.kind_ = GridKind::polar;
  g.x0_ = r_in;
  g.x1_ = r_out;
  g.y0_ = 0.0;
  g.y1_ = 2.0 * kPi;
  g.nx_ = nr;
  g.ny_ = ntheta;
  g.periodic_x_ = false;
  return g;
}

double Grid2D::disc_cutoff(double R) { return std::max(1e-3, R / 1024.0); }

Grid2D Grid2D::disc(double R, int nr, int ntheta) { return polar(disc_cutoff(R), R, nr, ntheta); }

std::size_t Grid2D::index(int i, int j) const {
  const int mx = nodes_x();
  const int my = nodes_y();
  if (periodic_x_) i = ((i % mx) + mx) % mx;
  if (periodic_y()) j = ((j % my) + my) % my;
  if (i < 0 || i >= mx || j < 0 || j >= my) throw std::out_of_range("grid index out of range");
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(mx) + static_cast<std::size_t>(i);
}

Vec2 Grid2D::position(int i, int j) const {
  const double a = coord_x(i);
  const double b = coord_y(j);
  if (kind_ == GridKind::rectangle) return {a, b};
  return {a * std::cos(b), a * std::sin(b)};
}

Vec2 Grid2D::node(std::size_t k) const { return position(node_i(k), node_j(k)); }

bool Grid2D::on_boundary(int i, int j) const {
  if (!periodic_x_ && (i == 0 || i == nx_)) return true;
  if (!periodic_y() && (j == 0 || j == ny_)) return true;
  return false;
}

Field2D sample_analytic(const Grid2D& grid, const std::function<Vec2(Vec2)>& f) {
  Field2D out{grid, std::vector<Vec2>(grid.node_count())};
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const Vec2 v = f(grid.node(k));
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      std::ostringstream msg;
      msg << "non-finite field value at node " << k;
      throw std::domain_error(msg.str());
    }
    out.values[k] = v;
  }
  return out;
}

void write_field_csv(std::ostream& out, const Field2D& field) {
  out << "x,y,u1,u2\n" << std::setprecision(17);
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const Vec2 p = field.grid.node(k);
    out << p.x << ',' << p.y << ',' << field.values[k].x << ',' << field.values[k].y << '\n';
  }
}

void write_field_csv(const std::string& path, const Field2D& field) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  write_field_csv(f, field);
}

std::string JumpSegment::check() const {
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto& v = vertices[k];
    std::ostringstream msg;
    if (std::abs(norm(v.plus) - 1.0) > 1e-12 || std::abs(norm(v.minus) - 1.0) > 1e-12) {
      msg << "vertex " << k << ": trace not unit";
      return msg.str();
    }
    if (std::abs(norm(v.normal) - 1.0) > 1e-12) {
      msg << "vertex " << k << ": normal not unit";
      return msg.str();
    }
    if (std::abs(dot(v.plus - v.minus, v.normal)) > 1e-10) {
      msg << "vertex " << k << ": normal component jumps";
      return msg.str();
    }
  }
  return {};
}

}  // namespace nematic
