#include "nematic/energy.hpp"

#include "nematic/numerics.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace nematic {

WallIntegrand wall_integrand(Vec2 plus, Vec2 minus, Vec2 normal) {
  const double wp = dot(plus, normal), wm = dot(minus, normal);
  if (std::abs(wp - wm) > 1e-8) {
    std::ostringstream msg;
    msg << "trace mismatch in normal component: " << wp << " vs " << wm;
    throw std::invalid_argument(msg.str());
  }
  const double j = norm(plus - minus);
  const double w = std::clamp(0.5 * (wp + wm), -1.0, 1.0);
  return {j * j * j / 6.0, 4.0 / 3.0 * std::pow(1.0 - w * w, 1.5)};
}

double wall_cost_density(Vec2 plus, Vec2 minus, Vec2 normal) { return wall_integrand(plus, minus, normal).jump_cube; }

std::vector<P1Element> triangulate(const Grid2D& grid) {
  std::vector<P1Element> out;
  const int cx = grid.nx(), cy = grid.ny();
  out.reserve(static_cast<std::size_t>(2 * cx * cy));
  auto make = [&](std::array<std::pair<int, int>, 3> v) {
    P1Element e;
    std::array<Vec2, 3> p;
    for (int k = 0; k < 3; ++k) {
      e.node[k] = grid.index(v[k].first, v[k].second);
      p[k] = grid.position(v[k].first, v[k].second);
    }
    const double a2 = cross(p[1] - p[0], p[2] - p[0]);
    e.grad[0] = perp(p[2] - p[1]) / a2;
    e.grad[1] = perp(p[0] - p[2]) / a2;
    e.grad[2] = perp(p[1] - p[0]) / a2;
    e.area = 0.5 * std::abs(a2);
    out.push_back(e);
  };
  for (int j = 0; j < cy; ++j) {
    for (int i = 0; i < cx; ++i) {
      const std::pair<int, int> a{i, j}, b{i + 1, j}, c{i + 1, j + 1}, d{i, j + 1};
      if ((i + j) % 2 == 0) {
        make({a, b, c});
        make({a, c, d});
      } else {
        make({a, b, d});
        make({b, c, d});
      }
    }
  }
  return out;
}

std::vector<double> lumped_mass(const Grid2D& grid, const std::vector<P1Element>& elements) {
  std::vector<double> m(grid.node_count(), 0.0);
  for (const auto& e : elements)
    for (std::size_t k : e.node) m[k] += e.area / 3.0;
  return m;
}

EnergyBreakdown eval_E_eps(const Field2D& field, const Params& params) {
  const auto el = triangulate(field.grid);
  return eval_E_eps(field, params, el, lumped_mass(field.grid, el));
}

EnergyBreakdown eval_E_eps(const Field2D& field, const Params& params, const std::vector<P1Element>& elements,
                           const std::vector<double>& mass) {
  if (field.values.size() != field.grid.node_count()) throw std::invalid_argument("field size mismatch");
  std::vector<double> g(elements.size()), d(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& el = elements[e];
    double u1x = 0, u1y = 0, u2x = 0, u2y = 0;
    for (int k = 0; k < 3; ++k) {
      const Vec2 u = field.values[el.node[k]];
      u1x += u.x * el.grad[k].x;
      u1y += u.x * el.grad[k].y;
      u2x += u.y * el.grad[k].x;
      u2y += u.y * el.grad[k].y;
    }
    g[e] = el.area * (u1x * u1x + u1y * u1y + u2x * u2x + u2y * u2y);
    const double div = u1x + u2y;
    d[e] = el.area * div * div;
  }
  std::vector<double> pot(mass.size());
  for (std::size_t k = 0; k < mass.size(); ++k) {
    const Vec2 u = field.values[k];
    const double w = dot(u, u) - 1.0;
    pot[k] = mass[k] * w * w;
  }
  EnergyBreakdown out;
  out.grad = 0.5 * params.eps * pairwise_sum(g);
  out.bulk_div = 0.5 * params.L * pairwise_sum(d);
  out.potential = 0.5 / params.eps * pairwise_sum(pot);
  out.sum();
  return out;
}

EnergyBreakdown eval_E_eps_1d(const Profile1D& profile, const Params& params) {
  const auto& y = profile.y;
  const auto& u = profile.u;
  if (y.size() < 2 || u.size() != y.size()) throw std::invalid_argument("1D profile needs matching y and u arrays");
  const double b = std::sqrt(1.0 - params.a * params.a);
  if (norm(u.front() - Vec2{-b, params.a}) > 1e-12 || norm(u.back() - Vec2{b, params.a}) > 1e-12)
    throw std::invalid_argument("1D profile violates the boundary values (-+sqrt(1-a^2), a) at -+H");
  std::vector<double> g(y.size() - 1), d(y.size() - 1), p(y.size() - 1);
  auto w = [](Vec2 v) {
    const double q = dot(v, v) - 1.0;
    return q * q;
  };
  for (std::size_t k = 0; k + 1 < y.size(); ++k) {
    const double h = y[k + 1] - y[k];
    if (!(h > 0)) throw std::invalid_argument("1D profile abscissae must increase");
    const Vec2 du = u[k + 1] - u[k];
    g[k] = dot(du, du) / h;
    d[k] = du.y * du.y / h;
    p[k] = 0.5 * h * (w(u[k]) + w(u[k + 1]));
  }
  EnergyBreakdown out;
  out.grad = 0.5 * params.eps * pairwise_sum(g);
  out.bulk_div = 0.5 * params.L * pairwise_sum(d);
  out.potential = 0.5 / params.eps * pairwise_sum(p);
  out.sum();
  return out;
}

double OneDProfile::u2_at(double yy) const {
  auto it = std::upper_bound(y.begin(), y.end(), yy);
  std::size_t k = it == y.begin() ? 0 : static_cast<std::size_t>(it - y.begin()) - 1;
  k = std::min(k, y.size() - 2);
  const double t = (yy - y[k]) / (y[k + 1] - y[k]);
  return u2[k] + t * (u2[k + 1] - u2[k]);
}

Vec2 OneDProfile::u_at(double yy) const {
  auto it = std::upper_bound(y.begin(), y.end(), yy);
  std::size_t k = it == y.begin() ? 0 : static_cast<std::size_t>(it - y.begin()) - 1;
  k = std::min(k, y.size() - 2);
  const double v = u2_at(yy);
  return {sign[k] * std::sqrt(std::max(0.0, 1.0 - v * v)), v};
}

EnergyBreakdown eval_E0_1d(const OneDProfile& profile, const Params& params) {
  const auto& y = profile.y;
  const auto& u2 = profile.u2;
  if (y.size() < 2 || u2.size() != y.size() || profile.sign.size() + 1 != y.size())
    throw std::invalid_argument("1D profile arrays inconsistent");
  for (double v : u2)
    if (std::abs(v) > 1.0 + 1e-10) throw std::invalid_argument("1D profile leaves the unit circle (|u2| > 1)");
  if (std::abs(u2.front() - params.a) > 1e-12 || std::abs(u2.back() - params.a) > 1e-12)
    throw std::invalid_argument("1D profile violates u2(-+H) = a");
  auto cap = [](double v) { return std::pow(std::max(0.0, 1.0 - v * v), 1.5); };
  EnergyBreakdown out;
  std::vector<double> bulk(y.size() - 1);
  for (std::size_t k = 0; k + 1 < y.size(); ++k) {
    const double h = y[k + 1] - y[k];
    bulk[k] = (u2[k + 1] - u2[k]) * (u2[k + 1] - u2[k]) / h;
  }
  out.bulk_div = 0.5 * params.L * pairwise_sum(bulk);
  for (std::size_t k = 1; k + 1 < y.size(); ++k)
    if (profile.sign[k - 1] != profile.sign[k]) out.wall_interior += 4.0 / 3.0 * cap(u2[k]);
  const double b = std::sqrt(1.0 - params.a * params.a);
  const double lo = profile.sign.front() * std::sqrt(std::max(0.0, 1.0 - u2.front() * u2.front()));
  const double hi = profile.sign.back() * std::sqrt(std::max(0.0, 1.0 - u2.back() * u2.back()));
  out.wall_boundary = std::pow(std::abs(lo + b), 3) / 6.0 + std::pow(std::abs(hi - b), 3) / 6.0;
  out.sum();
  return out;
}

double family_bulk_integral(const CharacteristicFamily& family, double L, const QuadratureOptions& q) {
  const GaussRule& g = gauss_legendre(q.order);
  const double range = family.s_max - family.s_min;
  const double hs = range / q.panels_s;
  const double fd = 1e-6 * range;
  std::vector<double> panel(static_cast<std::size_t>(q.panels_s));
  parallel_for(panel.size(), [&](std::size_t ps) {
    double acc = 0.0;
    for (std::size_t a = 0; a < g.nodes.size(); ++a) {
      const double s = family.s_min + (ps + 0.5) * hs + 0.5 * hs * g.nodes[a];
      const Seed c = family.seed(s);
      const double ts = family.t_star(s);
      // stencil for d/ds at fixed t
      double s1, s2, w0, w1, w2;
      if (s - fd < family.s_min) {
        s1 = s + fd;
        s2 = s + 2 * fd;
        w0 = -1.5 / fd;
        w1 = 2.0 / fd;
        w2 = -0.5 / fd;
      } else if (s + fd > family.s_max) {
        s1 = s - fd;
        s2 = s - 2 * fd;
        w0 = 1.5 / fd;
        w1 = -2.0 / fd;
        w2 = 0.5 / fd;
      } else {
        s1 = s + fd;
        s2 = s - fd;
        w0 = 0.0;
        w1 = 0.5 / fd;
        w2 = -0.5 / fd;
      }
      const Seed c1 = family.seed(s1), c2 = family.seed(s2);
      const double ht = 1.0 / q.panels_t;
      double inner = 0.0;
      for (int pt = 0; pt < q.panels_t; ++pt) {
        for (std::size_t b = 0; b < g.nodes.size(); ++b) {
          const double uu = (pt + 0.5) * ht + 0.5 * ht * g.nodes[b];
          const double tau = family.direction * uu * ts;
          const ArcSample p0 = arc_eval(c.origin, c.theta0, c.v0, tau);
          const Vec2 ps = p0.p * w0 + arc_eval(c1.origin, c1.theta0, c1.v0, tau).p * w1 +
                          arc_eval(c2.origin, c2.theta0, c2.v0, tau).p * w2;
          const Vec2 ptv = Vec2{-std::sin(p0.theta), std::cos(p0.theta)} * static_cast<double>(family.direction);
          inner += 0.5 * ht * g.weights[b] * std::abs(cross(ps, ptv));
        }
      }
      acc += 0.5 * hs * g.weights[a] * c.v0 * c.v0 * ts * inner;
    }
    panel[ps] = acc;
  });
  return 0.5 * L * pairwise_sum(panel);
}

double wall_integral(const WallPiece& wall, const QuadratureOptions& q) {
  const double core = integrate(
      [&](double p) {
        const WallPoint w = wall.eval(p);
        return wall_cost_density(w.plus, w.minus, w.normal) * wall.speed(p);
      },
      wall.p_min, wall.p_max, q.wall_panels, q.wall_order);
  return core + wall.tail_energy;
}

EnergyBreakdown eval_E0_piecewise(const PiecewiseCriticalField& field, const Params& params,
                                  const QuadratureOptions& q) {
  EnergyBreakdown out;
  for (const auto& w : field.walls) {
    const std::string bad = w.sample(16).check();
    if (!bad.empty()) throw std::invalid_argument("wall '" + w.label + "': " + bad);
  }
  for (const auto& f : field.families) {
    const FoliationReport rep = check_foliation(f.family, 16, 16);
    if (!rep.sign_consistent || rep.crossings > 0)
      throw std::runtime_error("family '" + f.family.label + "' is not a foliation");
    out.bulk_div += f.multiplicity * family_bulk_integral(f.family, params.L, q);
  }
  for (const auto& w : field.walls) {
    const double e = w.multiplicity * wall_integral(w, q);
    if (w.on_boundary) out.wall_boundary += e;
    else out.wall_interior += e;
  }
  out.sum();
  return out;
}

CriticalityReport criticality_residuals(const PiecewiseCriticalField& field, const Params& params,
                                        const ResidualOptions& opt) {
  CriticalityReport rep;
  const double h = opt.h;
  for (const auto& fp : field.families) {
    const auto& fam = fp.family;
    for (int k = 0; k < opt.ns; ++k) {
      const double s = fam.s_min + (k + 0.5) / opt.ns * (fam.s_max - fam.s_min);
      const double ts = fam.t_star(s);
      for (int j = 0; j < opt.nt; ++j) {
        // the first tenth of each arc is skipped: arcs leaving a seed curve tangentially have an envelope there
        const double t = (0.1 + 0.9 * (j + 0.5) / opt.nt) * ts;
        const ArcSample c = fam.point(s, t);
        const FamilyCoords g0{s, t};
        const double hl = h;
        std::array<ArcSample, 4> nb;
        const std::array<Vec2, 4> off{Vec2{hl, 0}, Vec2{-hl, 0}, Vec2{0, hl}, Vec2{0, -hl}};
        bool ok = true;
        bool resolved = true;
        for (int m = 0; m < 4 && ok; ++m) {
          try {
            const FamilyCoords q = invert_family(fam, c.p + off[m], g0);
            // near an envelope of the arcs a small step jumps far in s or t
            if (std::abs(q.s - s) > 1e-2 * (fam.s_max - fam.s_min) || std::abs(q.t - t) > 0.25 * t) resolved = false;
            nb[m] = fam.point(q.s, q.t);
          } catch (const NoConvergence&) {
            ok = false;
          }
        }
        if (!ok) continue;
        if (!resolved) {
          ++rep.unresolved;
          continue;
        }
        const double thx = (nb[0].theta - nb[1].theta) / (2 * hl), thy = (nb[2].theta - nb[3].theta) / (2 * hl);
        const double vx = (nb[0].v - nb[1].v) / (2 * hl), vy = (nb[2].v - nb[3].v) / (2 * hl);
        const double sn = std::sin(c.theta), cs = std::cos(c.theta);
        rep.thetav = std::max(rep.thetav, std::abs(-sn * thx + cs * thy - c.v));
        rep.vconstant = std::max(rep.vconstant, std::abs(-sn * vx + cs * vy));
        ++rep.samples;
      }
    }
  }
  for (const auto& w : field.walls) {
    const int n = opt.wall_samples;
    for (int k = 0; k < n; ++k) {
      const double p = w.p_min + (k + 0.5) / n * (w.p_max - w.p_min);
      const WallPoint wp = w.eval(p);
      const double un = std::clamp(dot(wp.plus, wp.normal), -1.0, 1.0);
      const double root = std::sqrt(1.0 - un * un);
      if (w.on_boundary) {
        rep.wall_boundary = std::max(rep.wall_boundary, std::abs(params.L * wp.div_minus + 4.0 * root * un));
        continue;
      }
      rep.wall_jump =
          std::max(rep.wall_jump, std::abs(params.L * (wp.div_plus - wp.div_minus) + 4.0 * root * un));
      // stationarity of the wall curve; tangential derivatives by differences in the parameter
      const double dp = 1e-4 * (w.p_max - w.p_min);
      const double pc = std::clamp(p, w.p_min + dp, w.p_max - dp);
      const WallPoint wa = w.eval(pc - dp), wc = w.eval(pc), wb = w.eval(pc + dp);
      const Vec2 ca = wc.p - wa.p, cb = wb.p - wc.p;
      const Vec2 tau = (cb + ca) / norm(cb + ca);
      const double ds = 0.5 * (norm(ca) + norm(cb));
      const double dsum = ((wb.div_plus + wb.div_minus) - (wa.div_plus + wa.div_minus)) / (2.0 * ds);
      const double kappa = dot(cb / norm(cb) - ca / norm(ca), wp.normal) / ds;
      const double lhs = wp.div_plus * wp.div_plus - wp.div_minus * wp.div_minus +
                         dsum * dot(wp.plus - wp.minus, tau);
      const double rhs = 8.0 * kappa / (3.0 * params.L) * root * (1.0 + 2.0 * un * un);
      rep.wall_motion = std::max(rep.wall_motion, std::abs(lhs - rhs));
    }
  }
  return rep;
}

void write_energy_json(std::ostream& out, const EnergyBreakdown& e, const Params& params) {
  nlohmann::ordered_json j;
  j["grad"] = e.grad;
  j["potential"] = e.potential;
  j["bulk_div"] = e.bulk_div;
  j["wall_interior"] = e.wall_interior;
  j["wall_boundary"] = e.wall_boundary;
  j["total"] = e.total;
  j["params"] = {{"L", params.L}, {"eps", params.eps}, {"H", params.H},
                 {"T", params.T}, {"R", params.R},     {"a", params.a}};
  out << j.dump(2) << '\n';
}

}  // namespace nematic
