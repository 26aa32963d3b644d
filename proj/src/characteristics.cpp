#include "nematic/characteristics.hpp"

#include "nematic/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nematic {

namespace {

double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

struct Frame {
  Vec2 ps;
  Vec2 pt;
  bool one_sided = false;
};

// Partial derivatives of the forward map at (s, t).
Frame local_frame(const CharacteristicFamily& f, double s, double t) {
  const double range = f.s_max - f.s_min;
  const double h = 1e-6 * range;
  Frame fr;
  if (s - h < f.s_min) {
    const Vec2 p0 = f.point(s, t).p, p1 = f.point(s + h, t).p, p2 = f.point(s + 2 * h, t).p;
    fr.ps = (p0 * -3.0 + p1 * 4.0 - p2) / (2 * h);
    fr.one_sided = true;
  } else if (s + h > f.s_max) {
    const Vec2 p0 = f.point(s, t).p, p1 = f.point(s - h, t).p, p2 = f.point(s - 2 * h, t).p;
    fr.ps = (p0 * 3.0 - p1 * 4.0 + p2) / (2 * h);
    fr.one_sided = true;
  } else {
    fr.ps = (f.point(s + h, t).p - f.point(s - h, t).p) / (2 * h);
  }
  const double theta = f.point(s, t).theta;
  fr.pt = Vec2{-std::sin(theta), std::cos(theta)} * static_cast<double>(f.direction);
  return fr;
}

bool near(Vec2 a, Vec2 b, double tol) { return norm(a - b) <= tol; }

int orient(Vec2 a, Vec2 b, Vec2 c) {
  // collinear within roundoff counts as touching, not crossing
  const double v = cross(b - a, c - a);
  const double tol = 1e-12 * norm(b - a) * norm(c - a);
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

bool proper_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

ArcSample arc_eval(Vec2 origin, double theta0, double v0, double tau) {
  ArcSample out;
  out.theta = theta0 + v0 * tau;
  out.v = v0;
  if (std::abs(v0) < kStraightLineThreshold) {
    out.p = {origin.x - tau * std::sin(theta0), origin.y + tau * std::cos(theta0)};
    return out;
  }
  // half-angle form of (cos(theta0 + v tau) - cos theta0) / v, free of the 1/v cancellation
  const double half = 0.5 * v0 * tau;
  const double sc = tau * sinc(half);
  out.p = {origin.x - sc * std::sin(theta0 + half), origin.y + sc * std::cos(theta0 + half)};
  return out;
}

ArcSample arc_point(const CharacteristicArc& arc, double t) {
  const double slack = 1e-12 * std::max(1.0, arc.t_max);
  if (!(t >= -slack && t <= arc.t_max + slack)) {
    std::ostringstream msg;
    msg << "arc parameter " << t << " outside [0, " << arc.t_max << "]";
    throw std::out_of_range(msg.str());
  }
  return arc_eval(arc.origin, arc.theta0, arc.v0, arc.direction * t);
}

TangentNormal arc_tangent_normal(const CharacteristicArc& arc, double t) {
  const double theta = arc_point(arc, t).theta;
  return {{-std::sin(theta), std::cos(theta)}, {std::cos(theta), std::sin(theta)}};
}

CharacteristicArc CharacteristicFamily::arc(double s) const {
  const Seed sd = seed(s);
  return {sd.origin, sd.theta0, sd.v0, t_star(s), direction};
}

ArcSample CharacteristicFamily::point(double s, double t) const {
  const Seed sd = seed(s);
  return arc_eval(sd.origin, sd.theta0, sd.v0, direction * t);
}

CharacteristicFamily sampled_family(std::string label, const std::vector<double>& s, const std::vector<Seed>& seeds,
                                    const std::vector<double>& t_star, int direction) {
  if (s.size() != seeds.size() || s.size() != t_star.size())
    throw std::invalid_argument("sampled family: sample arrays differ in length");
  std::vector<double> x0, y0, th, v, ts(t_star);
  for (const Seed& sd : seeds) {
    x0.push_back(sd.origin.x);
    y0.push_back(sd.origin.y);
    th.push_back(sd.theta0);
    v.push_back(sd.v0);
  }
  MonotoneCubic ix(s, x0), iy(s, y0), ith(s, th), iv(s, v), its(s, ts);
  CharacteristicFamily f;
  f.label = std::move(label);
  f.s_min = s.front();
  f.s_max = s.back();
  f.direction = direction;
  f.seed = [=](double q) { return Seed{{ix(q), iy(q)}, ith(q), iv(q)}; };
  f.t_star = [=](double q) { return its(q); };
  return f;
}

FamilyCoords invert_family(const CharacteristicFamily& family, Vec2 target, std::optional<FamilyCoords> guess) {
  const double range = family.s_max - family.s_min;
  FamilyCoords c;
  if (guess) {
    c = *guess;
  } else {
    constexpr int kScan = 32;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kScan; ++k) {
      const double s = family.s_min + (k + 0.5) / kScan * range;
      const Seed sd = family.seed(s);
      const double ts = family.t_star(s);
      for (int j = 0; j <= kScan; ++j) {
        const double t = ts * j / kScan;
        const double d = norm(arc_eval(sd.origin, sd.theta0, sd.v0, family.direction * t).p - target);
        if (d < best) {
          best = d;
          c = {s, t};
        }
      }
    }
  }
  const double tol = 1e-12 * std::max(1.0, norm(target));
  auto clamp = [&](FamilyCoords q) {
    q.s = std::clamp(q.s, family.s_min, family.s_max);
    q.t = std::clamp(q.t, 0.0, family.t_star(q.s));
    return q;
  };
  c = clamp(c);
  double res = norm(family.point(c.s, c.t).p - target);
  for (int it = 0; it < 50 && res > tol; ++it) {
    const Frame fr = local_frame(family, c.s, c.t);
    const double det = cross(fr.ps, fr.pt);
    if (!(std::abs(det) > 0.0)) break;
    const Vec2 r = family.point(c.s, c.t).p - target;
    const double ds = -cross(r, fr.pt) / det;
    const double dt = -cross(fr.ps, r) / det;
    double lambda = 1.0;
    bool moved = false;
    for (int k = 0; k < 30; ++k, lambda *= 0.5) {
      const FamilyCoords trial = clamp({c.s + lambda * ds, c.t + lambda * dt});
      const double tr = norm(family.point(trial.s, trial.t).p - target);
      if (tr < res) {
        c = trial;
        res = tr;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (!(res <= std::max(tol, 1e-11))) {
    std::ostringstream msg;
    msg << "inversion of (" << target.x << ", " << target.y << ") in family '" << family.label
        << "' did not converge (residual " << res << ")";
    throw NoConvergence(msg.str());
  }
  return c;
}

JacobianValue family_jacobian(const CharacteristicFamily& family, double s, double t) {
  const Frame fr = local_frame(family, s, t);
  return {cross(fr.ps, fr.pt), fr.one_sided};
}

FoliationReport check_foliation(const CharacteristicFamily& family, int ns, int nt) {
  if (ns < 8 || nt < 8) throw std::invalid_argument("check_foliation needs ns, nt >= 8");
  const double range = family.s_max - family.s_min;
  std::vector<std::vector<Vec2>> arcs(static_cast<std::size_t>(ns));
  std::vector<double> jmin(static_cast<std::size_t>(ns)), jmax(static_cast<std::size_t>(ns));
  std::vector<int> jsign(static_cast<std::size_t>(ns));
  parallel_for(static_cast<std::size_t>(ns), [&](std::size_t k) {
    const double s = family.s_min + (k + 0.5) / ns * range;
    const double ts = family.t_star(s);
    auto& poly = arcs[k];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    int sign = 0;
    // chords of neighbouring arcs can cross when the polyline is coarse
    const int np = std::max(nt, 128);
    for (int j = 0; j <= np; ++j) poly.push_back(family.point(s, ts * j / np).p);
    for (int j = 1; j < nt; ++j) {
      const double jac = family_jacobian(family, s, ts * j / nt).det;
      lo = std::min(lo, std::abs(jac));
      hi = std::max(hi, std::abs(jac));
      const int sg = jac > 0 ? 1 : (jac < 0 ? -1 : 0);
      if (sign == 0) sign = sg;
      else if (sg != 0 && sg != sign) sign = 2;
    }
    jmin[k] = lo;
    jmax[k] = hi;
    jsign[k] = sign;
  });
  FoliationReport rep;
  rep.min_jacobian = *std::min_element(jmin.begin(), jmin.end());
  rep.max_jacobian = *std::max_element(jmax.begin(), jmax.end());
  int sign = 0;
  for (int sg : jsign) {
    if (sg == 2) rep.sign_consistent = false;
    if (sg == 0) continue;
    if (sign == 0) sign = sg;
    else if (sg != sign) rep.sign_consistent = false;
  }
  // pairwise crossings; segments touching an endpoint shared by both arcs are skipped
  double scale = 0.0;
  for (const auto& poly : arcs)
    for (const Vec2& p : poly) scale = std::max(scale, norm(p));
  const double ptol = 1e-9 * std::max(1.0, scale);
  std::vector<int> counts(static_cast<std::size_t>(ns), 0);
  parallel_for(static_cast<std::size_t>(ns), [&](std::size_t a) {
    const auto& A = arcs[a];
    for (std::size_t b = a + 1; b < arcs.size(); ++b) {
      const auto& B = arcs[b];
      const bool ss = near(A.front(), B.front(), ptol), ee = near(A.back(), B.back(), ptol);
      const bool se = near(A.front(), B.back(), ptol), es = near(A.back(), B.front(), ptol);
      for (std::size_t i = 0; i + 1 < A.size(); ++i) {
        const bool a_first = i == 0, a_last = i + 2 == A.size();
        for (std::size_t j = 0; j + 1 < B.size(); ++j) {
          const bool b_first = j == 0, b_last = j + 2 == B.size();
          if ((ss && a_first && b_first) || (ee && a_last && b_last) || (se && a_first && b_last) ||
              (es && a_last && b_first))
            continue;
          if (proper_cross(A[i], A[i + 1], B[j], B[j + 1])) ++counts[a];
        }
      }
    }
  });
  for (int c : counts) rep.crossings += c;
  return rep;
}

void write_family_csv(std::ostream& out, const CharacteristicFamily& family, int ns, int nt) {
  out << "s,t,x,y,theta,v\n" << std::setprecision(17);
  for (int k = 0; k <= ns; ++k) {
    const double s = family.s_min + (family.s_max - family.s_min) * k / ns;
    const double ts = family.t_star(s);
    for (int j = 0; j <= nt; ++j) {
      const double t = ts * j / nt;
      const ArcSample a = family.point(s, t);
      out << s << ',' << t << ',' << a.p.x << ',' << a.p.y << ',' << a.theta << ',' << a.v << '\n';
    }
  }
}

double WallPiece::speed(double param) const {
  const double h = 1e-6 * (p_max - p_min);
  if (param - h < p_min) {
    const Vec2 d = (eval(param).p * -3.0 + eval(param + h).p * 4.0 - eval(param + 2 * h).p) / (2 * h);
    return norm(d);
  }
  if (param + h > p_max) {
    const Vec2 d = (eval(param).p * 3.0 - eval(param - h).p * 4.0 + eval(param - 2 * h).p) / (2 * h);
    return norm(d);
  }
  return norm((eval(param + h).p - eval(param - h).p) / (2 * h));
}

JumpSegment WallPiece::sample(int n) const {
  JumpSegment seg;
  seg.on_boundary = on_boundary;
  for (int k = 0; k <= n; ++k) {
    const WallPoint w = eval(p_min + (p_max - p_min) * k / n);
    seg.vertices.push_back({w.p, w.normal, w.plus, w.minus});
  }
  return seg;
}

}  // namespace nematic
