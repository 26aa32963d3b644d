#include "nematic/disc.hpp"

#include "nematic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nematic {

namespace {

const Vec2 kDiagNormal{-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

Vec2 reflect_across(Vec2 u, Vec2 n) { return n * (2.0 * dot(u, n)) - u; }

std::string at(const char* what, double s) {
  std::ostringstream msg;
  msg << what << " at s=" << s;
  return msg.str();
}

}  // namespace

PiecewiseCriticalField tangential_solution(double R) {
  if (!(R > 0)) throw std::invalid_argument("R must be > 0");
  CharacteristicFamily f;
  f.label = "radii";
  f.s_min = 0.0;
  f.s_max = 2.0 * kPi;
  f.direction = 1;
  f.seed = [R](double phi) { return Seed{{R * std::cos(phi), R * std::sin(phi)}, phi + 0.5 * kPi, 0.0}; };
  f.t_star = [R](double) { return R; };
  PiecewiseCriticalField out;
  out.domain = "disc";
  out.families.push_back({f, 1.0});
  return out;
}

Vec2 hedgehog_field(int sign, Vec2 p) {
  const double r = norm(p);
  if (r == 0.0) return {0.0, static_cast<double>(sign)};
  const Vec2 er = p / r;
  const double q = sign * std::sqrt(std::max(0.0, 1.0 - r * r));
  return er * r + perp(er) * q;
}

PiecewiseCriticalField hedgehog_solution(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("hedgehog sign must be +1 or -1");
  CharacteristicFamily f;
  f.label = sign > 0 ? "hedgehog+" : "hedgehog-";
  f.s_min = 0.0;
  f.s_max = 2.0 * kPi;
  f.direction = sign;
  f.seed = [](double phi) { return Seed{{std::cos(phi), std::sin(phi)}, phi, 2.0}; };
  f.t_star = [](double) { return 0.5 * kPi; };
  PiecewiseCriticalField out;
  out.domain = "unit disc";
  out.families.push_back({f, 1.0});
  return out;
}

double region3_v0(double s, double L) {
  if (!(s >= 0) || !(L > 0)) throw std::invalid_argument("region3_v0 needs s >= 0, L > 0");
  const double lo = -1.0 / L;
  auto F = [s, L, lo](double p) {
    const double a = 1.0 - s * p;
    // the square root vanishes exactly at the bracket end
    const double r = p <= lo ? 0.0 : std::sqrt(std::max(0.0, 1.0 - L * L * p * p));
    return a * a - r - 1.0;
  };
  return bracketed_root(F, lo, 0.0, 1e-13, at("region III divergence", s));
}

double region2_v0(double s, double R, double L) {
  if (!(R > 0) || !(L > 0)) throw std::invalid_argument("region2_v0 needs R, L > 0");
  const double q = std::min(1.0 / R, 1.0 / L);
  const double sn = std::sin(s / R + 0.25 * kPi);
  auto F = [=](double p) {
    const double A = std::sqrt(2.0) * ((R * p + 1.0) * sn - R * p);
    return A * A - 1.0 - std::sqrt(std::max(0.0, 1.0 - L * L * p * p));
  };
  // F(0) = 2 sin^2(s/R + pi/4) - 2 vanishes at the end of the range, where v tends to 0
  if (F(0.0) >= 0.0) return 0.0;
  return bracketed_root(F, -q, 0.0, 1e-13, at("region II divergence", s));
}

DegMinusOneSolution build_deg_minus_one(double R, double L) {
  if (!(R > 0) || !(L > 0)) throw std::invalid_argument("degree -1 construction needs R, L > 0");
  DegMinusOneSolution sol;
  sol.R = R;
  sol.L = L;
  sol.s0 = (std::sqrt(2.0) - 1.0) * R;
  const double s0 = sol.s0;

  auto& f1 = sol.region1;
  f1.label = "region I";
  f1.s_min = s0;
  f1.s_max = R;
  f1.seed = [R](double s) { return Seed{{s, 0.0}, 0.0, -1.0 / R}; };
  f1.t_star = [R](double s) { return R * std::acos(std::min(1.0, (s + R) / (2.0 * R))); };

  auto& f3 = sol.region3;
  f3.label = "region III";
  f3.s_min = 0.0;
  f3.s_max = s0;
  f3.seed = [L](double s) { return Seed{{s, 0.0}, 0.0, region3_v0(s, L)}; };
  f3.t_star = [L](double s) {
    const double v = region3_v0(s, L);
    const double th = -0.25 * kPi + std::acos(std::min(1.0, (1.0 - s * v) / std::sqrt(2.0)));
    return th / v;
  };

  auto& f2 = sol.region2;
  f2.label = "region II";
  f2.s_min = 0.0;
  f2.s_max = 0.25 * kPi * R;
  const double c = std::sqrt(2.0) * R;
  f2.seed = [R, L, c](double s) {
    return Seed{{c - R * std::cos(s / R), R * std::sin(s / R)}, -s / R, region2_v0(s, R, L)};
  };
  f2.t_star = [R, L, c](double s) {
    const double v = region2_v0(s, R, L);
    const double th0 = -s / R;
    const Vec2 x0{c - R * std::cos(s / R), R * std::sin(s / R)};
    if (std::abs(v) < 1e-12) {
      const double den = std::sin(th0) + std::cos(th0);
      return std::max(0.0, (x0.x - x0.y) / den);
    }
    const double A = std::sqrt(2.0) * ((R * v + 1.0) * std::sin(s / R + 0.25 * kPi) - R * v);
    const double th = -0.25 * kPi + std::acos(std::min(1.0, A / std::sqrt(2.0)));
    return std::max(0.0, (th - th0) / v);
  };

  auto diag_wall = [&](const CharacteristicFamily& fam, const char* label) {
    WallPiece w;
    w.label = label;
    w.p_min = fam.s_min;
    w.p_max = fam.s_max;
    w.multiplicity = 4.0;
    w.eval = [fam](double s) {
      const ArcSample a = fam.point(s, fam.t_star(s));
      WallPoint wp;
      wp.p = a.p;
      wp.normal = kDiagNormal;
      wp.minus = unit_from_angle(a.theta);
      wp.plus = reflect_across(wp.minus, kDiagNormal);
      wp.div_minus = a.v;
      wp.div_plus = -a.v;
      return wp;
    };
    return w;
  };
  sol.wall3 = diag_wall(f3, "diagonal (region III)");
  sol.wall2 = diag_wall(f2, "diagonal (region II)");

  sol.field.domain = "disc, degree -1 data";
  sol.field.families = {{f1, 8.0}, {f2, 8.0}, {f3, 8.0}};
  sol.field.walls = {sol.wall3, sol.wall2};
  return sol;
}

DiscSample deg_minus_one_field_eval(const DegMinusOneSolution& sol, Vec2 p) {
  const double R = sol.R;
  if (!(norm(p) < R)) throw std::domain_error("point outside the open disc");
  const bool fy = p.y < 0;
  if (fy) p.y = -p.y;
  const bool fx = p.x < 0;
  if (fx) p.x = -p.x;
  const bool on_jump = std::abs(p.x - p.y) <= 1e-12 * R;
  const bool sw = p.y > p.x;
  if (sw) std::swap(p.x, p.y);

  // region dispatch in the first octant
  const CharacteristicFamily* order[3];
  const double vl = region3_v0(sol.s0, sol.L);
  const Vec2 cl{sol.s0 - 1.0 / vl, 0.0};
  if (norm(p - Vec2{std::sqrt(2.0) * R, 0.0}) <= R) {
    order[0] = &sol.region1;
    order[1] = &sol.region2;
    order[2] = &sol.region3;
  } else if (norm(p - cl) >= -1.0 / vl) {
    order[0] = &sol.region3;
    order[1] = &sol.region2;
    order[2] = &sol.region1;
  } else {
    order[0] = &sol.region2;
    order[1] = &sol.region1;
    order[2] = &sol.region3;
  }
  ArcSample a;
  bool found = false;
  for (const CharacteristicFamily* f : order) {
    try {
      const FamilyCoords q = invert_family(*f, p);
      a = f->point(q.s, q.t);
      found = true;
      break;
    } catch (const NoConvergence&) {
    }
  }
  if (!found) {
    // the centre is the degenerate endpoint of every region III arc
    if (norm(p) < 1e-9 * R) {
      a.theta = 0.0;
      a.v = -1.0 / sol.L;
    } else {
      throw NoConvergence("degree -1 evaluation: no family covers the point");
    }
  }
  DiscSample out;
  Vec2 u = unit_from_angle(a.theta);
  double v = a.v;
  if (on_jump) {
    out.on_jump = true;
    out.u_other = reflect_across(u, kDiagNormal);
    out.v_other = -v;
  }
  auto undo = [&](Vec2& w, double& dv) {
    if (sw) {
      w = {-w.y, -w.x};
      dv = -dv;
    }
    if (fx) w.x = -w.x;
    if (fy) w.y = -w.y;
  };
  undo(u, v);
  if (on_jump) undo(out.u_other, out.v_other);
  out.u = u;
  out.v = v;
  return out;
}

double deg_minus_one_diagonal_residual(const DegMinusOneSolution& sol, int n) {
  double worst = 0.0;
  for (const WallPiece* w : {&sol.wall3, &sol.wall2}) {
    for (int k = 0; k < n; ++k) {
      const double s = w->p_min + (k + 0.5) / n * (w->p_max - w->p_min);
      const WallPoint wp = w->eval(s);
      const double theta = std::atan2(wp.minus.y, wp.minus.x);
      worst = std::max(worst, std::abs(sol.L * wp.div_minus + std::cos(2.0 * theta)));
    }
  }
  return worst;
}

}  // namespace nematic
