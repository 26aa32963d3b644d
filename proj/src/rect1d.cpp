#include "nematic/rect1d.hpp"

#include "nematic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nematic {

namespace {

void check_inputs(double L, double H, double a) {
  if (!(L >= 0.0)) throw std::invalid_argument("L must be >= 0");
  if (!(H > 0.0)) throw std::invalid_argument("H must be > 0");
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("a must lie in [0, 1)");
}

}  // namespace

double wall_height_objective(double m, double l, double a) {
  const double c = std::max(0.0, 1.0 - m * m);
  return l * (m - a) * (m - a) + 4.0 / 3.0 * c * std::sqrt(c);
}

double wall_height_slope(double m, double l, double a) {
  return 2.0 * l * (m - a) - 4.0 * m * std::sqrt(std::max(0.0, 1.0 - m * m));
}

double solve_M(double L, double H, double a) {
  check_inputs(L, H, a);
  const double l = L / H;
  if (a == 0.0) return l < 2.0 ? std::sqrt(1.0 - 0.25 * l * l) : 0.0;
  auto fp = [=](double m) { return wall_height_slope(m, l, a); };
  const auto changes = sign_changes(fp, a, 1.0 - 1e-12, 2000);
  if (changes.size() != 1) throw NoConvergence("wall height slope does not change sign exactly once on (a, 1)");
  return bracketed_root(fp, changes.front().first, changes.front().second, 1e-15, "wall height");
}

double min_energy_1d(double L, double H, double a) {
  return wall_height_objective(solve_M(L, H, a), L / H, a);
}

double min_energy_1d_closed(double l) {
  if (!(l > 0.0)) throw std::invalid_argument("L/H must be > 0");
  return l < 2.0 ? l - l * l * l / 12.0 : 4.0 / 3.0;
}

OneDProfile minimizer_profile(double L, double H, double a) {
  OneDProfile p;
  p.H = H;
  p.a = a;
  p.M = solve_M(L, H, a);
  p.y = {-H, 0.0, H};
  p.u2 = {a, p.M, a};
  p.sign = {-1, 1};
  return p;
}

int default_recovery_points(double eps, double H) {
  return static_cast<int>(std::ceil(200.0 * H / eps));
}

Profile1D recovery_profile(const OneDProfile& sharp, double eps, int n) {
  const double H = sharp.H;
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (n < 20.0 * H / eps) throw std::invalid_argument("recovery profile under-resolved: need n >= 20 H / eps");
  const double w = std::pow(eps, 5.0 / 6.0);
  if (2.0 * w >= H) throw std::invalid_argument("recovery window 2 eps^{5/6} must be below H");
  const double b = std::sqrt(std::max(0.0, 1.0 - sharp.M * sharp.M));
  auto h = [=](double y) { return b * std::tanh(b * y / eps); };
  Profile1D out;
  out.y.resize(n + 1);
  out.u.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double y = k == n ? H : -H + 2.0 * H * k / n;
    const double u2 = sharp.u2_at(y);
    double u1;
    const double ay = std::abs(y);
    if (ay <= w) {
      u1 = h(y);
    } else if (ay <= 2.0 * w) {
      const double sg = y > 0 ? 1.0 : -1.0;
      const double inner = h(sg * w), outer = sharp.u_at(sg * 2.0 * w).x;
      u1 = inner + (ay - w) / w * (outer - inner);
    } else {
      u1 = sharp.u_at(y).x;
    }
    out.y[k] = y;
    out.u[k] = {u1, u2};
  }
  // exact boundary data
  const double e = std::sqrt(1.0 - sharp.a * sharp.a);
  out.u.front() = {-e, sharp.a};
  out.u.back() = {e, sharp.a};
  return out;
}

Profile1D recovery_profile_1d(double eps, double L, double H, double a, int n) {
  return recovery_profile(minimizer_profile(L, H, a), eps, n);
}

std::vector<LadderRow> eps_ladder(double L, double H, double a, const std::vector<double>& eps) {
  const double target = min_energy_1d(L, H, a);
  std::vector<LadderRow> rows(eps.size());
  parallel_for(eps.size(), [&](std::size_t k) {
    Params p;
    p.L = L;
    p.H = H;
    p.a = a;
    p.eps = eps[k];
    const int n = default_recovery_points(eps[k], H);
    rows[k].eps = eps[k];
    rows[k].n = n;
    rows[k].energy = eval_E_eps_1d(recovery_profile_1d(eps[k], L, H, a, n), p).total;
    rows[k].gap = rows[k].energy - target;
  });
  return rows;
}

}  // namespace nematic
