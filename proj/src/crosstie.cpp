#include "nematic/crosstie.hpp"

#include "nematic/numerics.hpp"
#include "nematic/rect1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nematic {

namespace {

std::string at(const char* what, double s) {
  std::ostringstream msg;
  msg << what << " at s=" << s;
  return msg.str();
}

struct Region2Data {
  Vec2 origin;
  double theta0 = 0.0;
  double v = 0.0;
  double t_star = 0.0;
};

Vec2 gamma_point(double s, double alpha, double H) {
  const double h = std::sin(0.5 * alpha * s);
  return {2.0 * h * h / alpha, H - std::sin(alpha * s) / alpha};
}

Region2Data region2_data(double s, double alpha, double H, double L) {
  Region2Data d;
  d.origin = gamma_point(s, alpha, H);
  d.theta0 = alpha * s;
  if (s <= 0.0) return d;
  const double th = region2_arrival_angle(s, alpha, L);
  d.v = -std::sin(2.0 * th) / L;
  d.t_star = (th - d.theta0) / d.v;
  return d;
}

double region3_theta0(double s, double L) { return 0.5 * (kPi - std::asin(bottom_sin2theta(s, L))); }

Vec2 reflect_x(Vec2 u) { return {u.x, -u.y}; }
Vec2 reflect_y(Vec2 u) { return {-u.x, u.y}; }

}  // namespace

double period_residual(double Tt, double l) {
  const double t2 = Tt * Tt;
  return l * (std::sqrt(l * l + 4.0 * t2) - l) - 8.0 * t2 * Tt * (1.0 - t2) / ((t2 + 1.0) * (t2 + 1.0));
}

double solve_Ttilde(double l) {
  if (!(l > 0.0)) throw std::invalid_argument("L/H must be > 0");
  auto f = [l](double t) { return period_residual(t, l); };
  // negative at tan(pi/8), l(sqrt(l^2+4) - l) > 0 at 1
  const double lo = std::tan(kPi / 8.0);
  const auto brackets = sign_changes(f, lo, 1.0, 4096);
  if (brackets.empty()) throw NoConvergence(at("period equation has no root in (tan(pi/8), 1)", l));
  const auto& b = brackets.back();
  return bracketed_root(f, b.first, b.second, 1e-15, "period equation");
}

double L_over_H_from_Ttilde(double Tt) {
  const double x = 1.0 / Tt;
  const double zeta = 2.0 * x * (x * x - 1.0) / ((x * x + 1.0) * (x * x + 1.0));
  const double lambda = (1.0 - 2.0 * zeta) / (zeta * zeta);
  return 2.0 * Tt / std::sqrt(lambda);
}

double bottom_sin2theta(double s, double L) {
  const double lam = 2.0 * s * s / (L * L);
  return 2.0 / (1.0 + std::sqrt(1.0 + 2.0 * lam));
}

double region2_arrival_angle(double s, double alpha, double L) {
  const double as = alpha * s;
  const double h = std::sin(0.5 * as);
  const double c = 2.0 * h * h;  // 1 - cos(alpha s)
  auto f = [=](double b) {
    return c * std::sin(2.0 * b) + 2.0 * L * alpha * std::sin(0.5 * (b + as)) * std::sin(0.5 * (b - as));
  };
  const double top = std::asin(std::min(1.0, L * alpha / (2.0 * c)));
  return bracketed_root(f, 0.0, top, 1e-15, at("region II arrival angle", s));
}

CrossTieSolution build_crosstie(double L, double H) {
  if (!(L > 0.0)) throw std::invalid_argument("cross-tie needs L > 0");
  if (!(H > 0.0)) throw std::invalid_argument("cross-tie needs H > 0");
  CrossTieSolution sol;
  sol.L = L;
  sol.H = H;
  sol.L_over_H = L / H;
  sol.T_tilde = solve_Ttilde(L / H);
  const double T = sol.T = H * sol.T_tilde;
  const double alpha = sol.alpha = 2.0 * T / (T * T + H * H);
  sol.t1_star = 2.0 / alpha * std::atan(T / H);

  auto& f1 = sol.region1;
  f1.label = "region I";
  f1.s_min = 0.0;
  f1.s_max = T;
  f1.direction = -1;
  f1.seed = [T, H](double s) {
    const double d = T - s;
    return Seed{{s, H}, 0.0, -2.0 * d / (d * d + H * H)};
  };
  f1.t_star = [T, H](double s) {
    const double d = T - s;
    if (d <= 0.0) return H;
    return std::atan(d / H) * (d * d + H * H) / d;
  };

  auto& f3 = sol.region3;
  f3.label = "region III";
  f3.s_min = 0.0;
  f3.s_max = T;
  f3.seed = [L](double s) { return Seed{{s, 0.0}, region3_theta0(s, L), -bottom_sin2theta(s, L) / L}; };
  f3.t_star = [L](double s) {
    const double sg = bottom_sin2theta(s, L);
    return L * std::acos(std::min(1.0, sg)) / sg;
  };

  auto& f2 = sol.region2;
  f2.label = "region II";
  f2.s_min = 0.0;
  f2.s_max = sol.t1_star;
  f2.seed = [alpha, H, L](double s) {
    const Region2Data d = region2_data(s, alpha, H, L);
    return Seed{d.origin, d.theta0, d.v};
  };
  f2.t_star = [alpha, H, L](double s) { return region2_data(s, alpha, H, L).t_star; };

  auto& wy = sol.wall_y0;
  wy.label = "y = 0";
  wy.p_min = 0.0;
  wy.p_max = T;
  wy.multiplicity = 2.0;
  wy.eval = [L](double s) {
    const double th = region3_theta0(s, L);
    const double v = -bottom_sin2theta(s, L) / L;
    const Vec2 u = unit_from_angle(th);
    return WallPoint{{s, 0.0}, {0.0, -1.0}, reflect_y(u), u, -v, v};
  };
  auto x0_wall = [](const CharacteristicFamily& fam, const char* label) {
    WallPiece w;
    w.label = label;
    w.p_min = fam.s_min;
    w.p_max = fam.s_max;
    w.multiplicity = 2.0;
    w.eval = [fam](double s) {
      const ArcSample a = fam.point(s, fam.t_star(s));
      const Vec2 u = unit_from_angle(a.theta);
      return WallPoint{{0.0, a.p.y}, {-1.0, 0.0}, reflect_x(u), u, -a.v, a.v};
    };
    return w;
  };
  sol.wall_x0_lower = x0_wall(f3, "x = 0 (region III)");
  sol.wall_x0_upper = x0_wall(f2, "x = 0 (region II)");

  sol.field.domain = "rectangle cell, cross-tie";
  sol.field.families = {{f1, 4.0}, {f2, 4.0}, {f3, 4.0}};
  sol.field.walls = {sol.wall_y0, sol.wall_x0_lower, sol.wall_x0_upper};
  return sol;
}

QuadratureOptions crosstie_quadrature() {
  QuadratureOptions q;
  q.panels_s = 128;
  q.panels_t = 128;
  q.order = 4;
  q.wall_panels = 128;
  q.wall_order = 4;
  return q;
}

EnergyBreakdown crosstie_energy(const CrossTieSolution& sol, const QuadratureOptions& q) {
  Params p;
  p.L = sol.L;
  p.H = sol.H;
  p.T = sol.T;
  return eval_E0_piecewise(sol.field, p, q);
}

double crosstie_energy_per_length(const CrossTieSolution& sol, const QuadratureOptions& q) {
  return crosstie_energy(sol, q).total / (2.0 * sol.T);
}

double crosstie_energy_per_length(double L, double H, const QuadratureOptions& q) {
  return crosstie_energy_per_length(build_crosstie(L, H), q);
}

CrossTieInvariants crosstie_invariants(const CrossTieSolution& sol, int samples) {
  CrossTieInvariants out;
  const double T = sol.T, L = sol.L;
  const double th3T = region3_theta0(T, L);
  out.alpha_t1 = sol.alpha * sol.t1_star;
  out.tangency = std::abs(out.alpha_t1 - th3T);
  out.terminal_arrival = std::abs(sol.region3.point(T, sol.region3.t_star(T)).p.y - T);
  for (const WallPiece* w : {&sol.wall_y0, &sol.wall_x0_lower, &sol.wall_x0_upper}) {
    for (int k = 0; k <= samples; ++k) {
      const WallPoint wp = w->eval(w->p_min + (w->p_max - w->p_min) * k / samples);
      const double th = std::atan2(wp.minus.y, wp.minus.x);
      out.wall_residual = std::max(out.wall_residual, std::abs(L * wp.div_minus + std::sin(2.0 * th)));
    }
  }
  double prev_th = -1.0, prev_v = 1.0;
  out.gamma_v_jump = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= samples; ++k) {
    const double s = sol.t1_star * k / samples;
    const double th = region2_arrival_angle(s, sol.alpha, L);
    const double v = -std::sin(2.0 * th) / L;
    if (!(th > prev_th) || th < 0.0 || th > 0.25 * kPi + 1e-12) out.theta2_increasing = false;
    if (!(v < prev_v) || !(v < 0.0)) out.v2_negative_decreasing = false;
    prev_th = th;
    prev_v = v;
    // both sides of the terminal characteristic at time s
    const ArcSample g = sol.region1.point(0.0, s);
    const Seed sd = sol.region2.seed(s);
    out.gamma_theta_jump = std::max(out.gamma_theta_jump, std::abs(g.theta - sd.theta0));
    out.gamma_v_jump = std::min(out.gamma_v_jump, std::abs(g.v - sd.v0));
  }
  double rmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double v = sol.region1.seed(T * k / samples).v0;
    rmin = std::min(rmin, 1.0 / std::abs(v));
  }
  out.min_radius_over_H = rmin / sol.H;
  const CharacteristicFamily* fams[3] = {&sol.region1, &sol.region2, &sol.region3};
  for (int k = 0; k < 3; ++k) {
    const FoliationReport rep = check_foliation(*fams[k], 32, 32);
    out.foliation[k] = rep.sign_consistent && rep.crossings == 0;
  }
  return out;
}

CrossTieSample crosstie_field_eval(const CrossTieSolution& sol, Vec2 p) {
  const double T = sol.T, H = sol.H;
  if (std::abs(p.y) > H) throw std::domain_error("point outside the strip |y| <= H");
  double x = std::fmod(p.x + T, 2.0 * T);
  if (x < 0) x += 2.0 * T;
  x -= T;
  const bool fx = x < 0, fy = p.y < 0;
  const Vec2 q{std::abs(x), std::abs(p.y)};
  const double ra = 1.0 / sol.alpha;
  const Seed last = sol.region3.seed(T);
  const Vec2 c3 = last.origin - unit_from_angle(last.theta0) / last.v0;
  int order[3];
  if (norm(q - Vec2{ra, H}) <= ra) {
    order[0] = 0, order[1] = 1, order[2] = 2;
  } else if (norm(q - c3) >= -1.0 / last.v0) {
    order[0] = 2, order[1] = 1, order[2] = 0;
  } else {
    order[0] = 1, order[1] = 2, order[2] = 0;
  }
  const CharacteristicFamily* fams[3] = {&sol.region1, &sol.region2, &sol.region3};
  CrossTieSample out;
  bool found = false;
  ArcSample a;
  for (int k : order) {
    try {
      const FamilyCoords c = invert_family(*fams[k], q);
      a = fams[k]->point(c.s, c.t);
      out.region = k + 1;
      found = true;
      break;
    } catch (const NoConvergence&) {
    }
  }
  if (!found) {
    // the corner at the origin is the degenerate foot of region III
    if (norm(q) < 1e-9 * H) {
      a.theta = 0.25 * kPi;
      a.v = -1.0 / sol.L;
      out.region = 3;
    } else {
      throw NoConvergence("cross-tie evaluation: no family covers the point");
    }
  }
  Vec2 u = unit_from_angle(a.theta);
  double v = a.v;
  if (fx) {
    u = reflect_x(u);
    v = -v;
  }
  if (fy) {
    u = reflect_y(u);
    v = -v;
  }
  out.u = u;
  out.v = v;
  return out;
}

std::vector<SweepRow> crosstie_sweep(double lmin, double lmax, double step, double H, const QuadratureOptions& q) {
  if (!(lmin > 0.0) || !(lmax >= lmin) || !(step > 0.0)) throw std::invalid_argument("sweep needs 0 < lmin <= lmax, step > 0");
  const int n = static_cast<int>(std::floor((lmax - lmin) / step + 1e-9)) + 1;
  std::vector<SweepRow> rows(static_cast<std::size_t>(n));
  parallel_for(rows.size(), [&](std::size_t k) {
    const double l = lmin + step * static_cast<double>(k);
    rows[k].L_over_H = l;
    rows[k].E_crosstie = crosstie_energy_per_length(l * H, H, q);
    rows[k].E_1d = min_energy_1d(l * H, H, 0.0);
    rows[k].gap = rows[k].E_crosstie - rows[k].E_1d;
  });
  return rows;
}

CrossingResult find_crossing(double H, double lmin, double lmax, double step, const QuadratureOptions& q) {
  if (!(H > 0.0)) throw std::invalid_argument("H must be > 0");
  CrossingResult out;
  out.scan = crosstie_sweep(lmin, lmax, step, H, q);
  auto g = [&](double l) { return crosstie_energy_per_length(l * H, H, q) - min_energy_1d(l * H, H, 0.0); };
  for (std::size_t k = 0; k + 1 < out.scan.size(); ++k) {
    const double a = out.scan[k].gap, b = out.scan[k + 1].gap;
    if (!out.L0 && a > 0 && b <= 0) {
      out.L0 = bracketed_root(g, out.scan[k].L_over_H, out.scan[k + 1].L_over_H, 1e-6, "lower crossing");
    } else if (out.L0 && !out.L1 && a < 0 && b >= 0) {
      out.L1 = bracketed_root(g, out.scan[k].L_over_H, out.scan[k + 1].L_over_H, 1e-6, "upper crossing");
    }
  }
  if (!out.L0) out.message = "no sign change of the energy gap on the scan";
  else if (!out.L1) out.message = "cross-tie stays below the 1D energy up to the end of the scan";
  return out;
}

namespace {

// Value in the closed strip |x| <= 1/2; upper selects the y >= 0 sectors at y = 0.
Vec2 remark_sector(double x, double y, bool upper) {
  const double r = 1.0 / std::sqrt(2.0);
  const double ay = std::abs(y);
  if (upper) {
    if (ay <= x) return {r, -r};
    if (ay <= -x) return {r, r};
  } else {
    if (ay <= -x) return {-r, r};
    if (ay <= x) return {-r, -r};
  }
  const double rr = std::hypot(x, y);
  return {y / rr, -x / rr};
}

}  // namespace

Vec2 remark_crosstie_map(double x, double y) {
  const double xs = x - std::floor(x + 0.5);
  return remark_sector(xs, y, y >= 0.0);
}

std::vector<WallPiece> remark_crosstie_walls() {
  std::vector<WallPiece> out;
  WallPiece w;
  w.label = "y = 0";
  w.p_min = -0.5;
  w.p_max = 0.5;
  w.eval = [](double x) {
    return WallPoint{{x, 0.0}, {0.0, 1.0}, remark_sector(x, 0.0, true), remark_sector(x, 0.0, false), 0.0, 0.0};
  };
  out.push_back(w);
  auto side = [](double y) {
    const bool up = y >= 0.0;
    return WallPoint{{0.5, y}, {1.0, 0.0}, remark_sector(-0.5, y, up), remark_sector(0.5, y, up), 0.0, 0.0};
  };
  w.label = "x = 1/2, |y| < 1/2";
  w.p_min = -0.5;
  w.p_max = 0.5;
  w.eval = side;
  out.push_back(w);
  constexpr double Y = 8.0;
  w.label = "x = 1/2, |y| > 1/2";
  w.p_min = 0.5;
  w.p_max = Y;
  w.multiplicity = 2.0;
  w.eval = side;
  // (4/3) int_Y^inf (1 + 4y^2)^{-3/2} dy
  w.tail_energy = 4.0 / 3.0 * 0.5 * (1.0 - 2.0 * Y / std::sqrt(1.0 + 4.0 * Y * Y));
  out.push_back(w);
  return out;
}

double remark_crosstie_energy(const QuadratureOptions& q) {
  double e = 0.0;
  for (const WallPiece& w : remark_crosstie_walls()) e += w.multiplicity * wall_integral(w, q);
  return e;
}

}  // namespace nematic
