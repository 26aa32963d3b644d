#include "nematic/annulus.hpp"

#include "nematic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nematic {

namespace {

void check_wall(double rho, double a, double R) {
  if (!(R > 1.0)) throw std::invalid_argument("annulus needs R > 1");
  if (!(rho > 1.0 && rho < R)) throw std::invalid_argument("wall radius must lie in (1, R)");
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("normal trace a must lie in [0, 1]");
}

Vec2 er(double phi) { return {std::cos(phi), std::sin(phi)}; }
Vec2 eth(double phi) { return {-std::sin(phi), std::cos(phi)}; }

// First travel time at which the arc reaches radius target.
double radial_arrival(const Seed& sd, double target) {
  const double v = sd.v0;
  auto f = [&](double t) { return norm(arc_eval(sd.origin, sd.theta0, v, t).p) - target; };
  if (std::abs(v) < 1e-14) {
    const double len = std::abs(target - norm(sd.origin));
    return brent_root(f, 0.0, len * (1.0 + 1e-7) + 1e-12, "arrival at the annulus wall");
  }
  const double span = 2.0 * kPi / std::abs(v);
  constexpr int kSteps = 256;
  const double f0 = f(0.0);
  double prev = 0.0;
  for (int k = 1; k <= kSteps; ++k) {
    const double t = span * k / kSteps;
    if ((f(t) > 0.0) != (f0 > 0.0)) return brent_root(f, prev, t, "arrival at the annulus wall");
    prev = t;
  }
  throw NoConvergence("characteristic never reaches the annulus wall");
}

}  // namespace

double radial_p(double r, double rho, double a, double R) {
  check_wall(rho, a, R);
  if (r < 1.0 || r > R) throw std::domain_error("r outside [1, R]");
  if (r <= rho) return a * rho / (rho * rho - 1.0) * (r - 1.0 / r);
  return a * rho / (R * R - rho * rho) * (R * R / r - r);
}

double radial_q(double r, double rho, double a, double R) {
  const double p = radial_p(r, rho, a, R);
  const double q = std::sqrt(std::max(0.0, 1.0 - p * p));
  return r <= rho ? -q : q;
}

double radial_div(double r, double rho, double a, double R) {
  check_wall(rho, a, R);
  if (r <= rho) return 2.0 * a * rho / (rho * rho - 1.0);
  return -2.0 * a * rho / (R * R - rho * rho);
}

double annulus_energy(double rho, double a, double R, double L) {
  if (!(R > 1.0) || !(rho >= 1.0 && rho <= R)) throw std::invalid_argument("annulus energy: need 1 <= rho <= R, R > 1");
  const double wall = 8.0 / 3.0 * kPi * rho * std::pow(1.0 - a * a, 1.5);
  if (a == 0.0) return wall;
  return 2.0 * kPi * L * a * a * rho * rho * (1.0 / (rho * rho - 1.0) + 1.0 / (R * R - rho * rho)) + wall;
}

double annulus_nbc_residual(double rho, double a, double R, double L) {
  return 2.0 * a * L * rho * (1.0 / (rho * rho - 1.0) + 1.0 / (R * R - rho * rho)) - 4.0 * a * std::sqrt(1.0 - a * a);
}

double annulus_jump_residual(double rho, double a, double R, double L) {
  const double r2 = rho * rho;
  return 4.0 * a * a * r2 / ((R * R - r2) * (R * R - r2)) - 4.0 * a * a * r2 / ((r2 - 1.0) * (r2 - 1.0)) +
         8.0 / (3.0 * L * rho) * std::sqrt(1.0 - a * a) * (1.0 + 2.0 * a * a);
}

double quadratic_rho2(double a, double R) {
  if (!(a > 0.0 && a <= 0.5)) throw std::invalid_argument("quadratic_rho2 needs a in (0, 1/2]");
  const double c = 3.0 * a * a / (2.0 * a * a + 1.0);
  const double A = 1.0 - 2.0 * c, B = -(1.0 + R * R) * (1.0 - c), C = R * R;
  if (std::abs(A) < 1e-15) return -C / B;
  auto f = [=](double z) { return (A * z + B) * z + C; };
  return brent_root(f, 1.0, R * R, "wall-position quadratic");
}

double annulus_a_squared(double rho, double R) {
  const double r2 = rho * rho;
  return (r2 - 1.0) * (R * R - r2) / (-4.0 * r2 * r2 + (1.0 + R * R) * r2 + 2.0 * R * R);
}

double g_RL(double z, double R, double L) {
  const double R2 = R * R;
  return L * L * (R2 - 1.0) * (R2 - 1.0) * z * (z * z - (1.0 + R2) / 4.0 * z - R2 / 2.0) +
         3.0 * (R2 - z * z) * (z - 1.0) * (z - 1.0) * (R2 - z) * (R2 - z);
}

namespace {

std::vector<AnnulusRadialSolution> g_roots(double R, double L, double zmax, double a2max) {
  auto g = [=](double z) { return g_RL(z, R, L); };
  const auto brackets = sign_changes(g, 1.0 + 1e-9, zmax - 1e-9, 4096);
  std::vector<AnnulusRadialSolution> out;
  for (const auto& [lo, hi] : brackets) {
    const double z = brent_root(g, lo, hi, "g_{R,L}");
    const double rho = std::sqrt(z);
    const double a2 = annulus_a_squared(rho, R);
    if (!(a2 > 0.0 && a2 <= a2max + 1e-12)) continue;
    AnnulusRadialSolution s;
    s.R = R;
    s.L = L;
    s.rho = rho;
    s.a = std::sqrt(std::min(a2, a2max));
    s.energy = annulus_energy(rho, s.a, R, L);
    s.nbc_residual = annulus_nbc_residual(rho, s.a, R, L);
    s.jump_residual = annulus_jump_residual(rho, s.a, R, L);
    s.sign_changes = static_cast<int>(brackets.size());
    s.regime = "interior";
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::optional<AnnulusRadialSolution> solve_interior_wall(double R, double L) {
  if (!(R > 1.0) || !(L > 0.0)) throw std::invalid_argument("solve_interior_wall needs R > 1, L > 0");
  std::optional<AnnulusRadialSolution> best;
  for (const auto& s : g_roots(R, L, 2.0 * R * R / (1.0 + R * R), 0.25))
    if (!best || s.energy < best->energy) best = s;
  return best;
}

std::vector<AnnulusRadialSolution> radial_critical_walls(double R, double L) {
  if (!(R > 1.0) || !(L > 0.0)) throw std::invalid_argument("radial_critical_walls needs R > 1, L > 0");
  // a^2 -> 1 as z -> R; beyond R the squared equation picks up spurious roots
  return g_roots(R, L, R, 1.0);
}

AnnulusRadialSolution annulus_minimizer(double R, double L) {
  AnnulusRadialSolution inner;
  inner.R = R;
  inner.L = L;
  inner.rho = 1.0;
  inner.a = 0.0;
  inner.wall_at_boundary = true;
  inner.energy = 8.0 * kPi / 3.0;
  inner.regime = "inner-boundary";
  const auto walls = radial_critical_walls(R, L);
  inner.sign_changes = walls.empty() ? 0 : walls.front().sign_changes;
  AnnulusRadialSolution best = inner;
  for (const auto& w : walls)
    if (w.energy < best.energy) best = w;
  return best;
}

double small_L_interior_bound(double R) {
  if (!(R > 1.0)) throw std::invalid_argument("small_L_interior_bound needs R > 1");
  return 8.0 / 3.0 * (R * R - 1.0) / (R * R + 1.0) *
         (1.0 - std::sqrt(2.0) * R / std::sqrt(R * R + 1.0) * std::pow(0.75, 1.5));
}

PiecewiseCriticalField annulus_field(double rho, double a, double R) {
  if (!(R > 1.0) || !(rho >= 1.0 && rho <= R)) throw std::invalid_argument("annulus_field: need 1 <= rho <= R");
  PiecewiseCriticalField out;
  out.domain = "annulus";
  const bool inner_wall = rho == 1.0, outer_wall = rho == R;
  if (inner_wall || outer_wall) a = 0.0;
  if (!inner_wall) {
    // from r = 1 outwards; u = -e_theta on the inner circle
    const double v = outer_wall ? 0.0 : 2.0 * a * rho / (rho * rho - 1.0);
    CharacteristicFamily f;
    f.label = "inner";
    f.s_min = 0.0;
    f.s_max = 2.0 * kPi;
    f.seed = [v](double phi) { return Seed{er(phi), phi - 0.5 * kPi, v}; };
    f.t_star = [v, rho](double phi) { return radial_arrival(Seed{er(phi), phi - 0.5 * kPi, v}, rho); };
    out.families.push_back({f, 1.0});
  }
  if (!outer_wall) {
    const double v = inner_wall ? 0.0 : -2.0 * a * rho / (R * R - rho * rho);
    CharacteristicFamily f;
    f.label = "outer";
    f.s_min = 0.0;
    f.s_max = 2.0 * kPi;
    f.seed = [v, R](double phi) { return Seed{er(phi) * R, phi + 0.5 * kPi, v}; };
    f.t_star = [v, R, rho](double phi) { return radial_arrival(Seed{er(phi) * R, phi + 0.5 * kPi, v}, rho); };
    out.families.push_back({f, 1.0});
  }
  WallPiece w;
  w.p_min = 0.0;
  w.p_max = 2.0 * kPi;
  if (inner_wall) {
    w.label = "inner boundary";
    w.on_boundary = true;
    w.eval = [](double phi) {
      return WallPoint{er(phi), -er(phi), -eth(phi), eth(phi), 0.0, 0.0};
    };
  } else if (outer_wall) {
    w.label = "outer boundary";
    w.on_boundary = true;
    w.eval = [R](double phi) {
      return WallPoint{er(phi) * R, er(phi), eth(phi), -eth(phi), 0.0, 0.0};
    };
  } else {
    w.label = "circle";
    const double b = std::sqrt(1.0 - a * a);
    const double dm = 2.0 * a * rho / (rho * rho - 1.0), dp = -2.0 * a * rho / (R * R - rho * rho);
    w.eval = [=](double phi) {
      return WallPoint{er(phi) * rho, er(phi), er(phi) * a + eth(phi) * b, er(phi) * a - eth(phi) * b, dp, dm};
    };
  }
  out.walls.push_back(w);
  return out;
}

}  // namespace nematic
