#include "nematic/contour.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <utility>

namespace nematic {

namespace {

// Grid edge between two logical nodes, stored with the smaller node first.
using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey edge_key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

}  // namespace

std::vector<Polyline> marching_squares(const Grid2D& grid, const std::vector<double>& values, double level,
                                       std::optional<double> period) {
  if (values.size() != grid.node_count()) throw std::invalid_argument("contour values size mismatch");
  std::map<EdgeKey, Vec2> points;
  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  auto crossing = [&](int i0, int j0, int i1, int j1) -> std::optional<EdgeKey> {
    const std::size_t a = grid.index(i0, j0), b = grid.index(i1, j1);
    const double fa = values[a] - level, fb = values[b] - level;
    if ((fa >= 0) == (fb >= 0)) return std::nullopt;
    const EdgeKey k = edge_key(a, b);
    if (!points.count(k)) {
      const double t = fa / (fa - fb);
      points[k] = grid.position(i0, j0) * (1.0 - t) + grid.position(i1, j1) * t;
    }
    return k;
  };
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const int ci[4] = {i, i + 1, i + 1, i};
      const int cj[4] = {j, j, j + 1, j + 1};
      if (period) {
        double lo = values[grid.index(ci[0], cj[0])], hi = lo;
        for (int c = 1; c < 4; ++c) {
          const double v = values[grid.index(ci[c], cj[c])];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (hi - lo > 0.5 * *period) continue;
      }
      std::vector<EdgeKey> hits;
      for (int c = 0; c < 4; ++c) {
        const int d = (c + 1) % 4;
        if (auto k = crossing(ci[c], cj[c], ci[d], cj[d])) hits.push_back(*k);
      }
      if (hits.size() == 2) {
        segments.push_back({hits[0], hits[1]});
      } else if (hits.size() == 4) {
        // saddle: decide by the cell-centre value
        double centre = 0.0;
        for (int c = 0; c < 4; ++c) centre += values[grid.index(ci[c], cj[c])];
        const bool high = centre / 4.0 >= level;
        const bool first_high = values[grid.index(ci[0], cj[0])] >= level;
        if (high == first_high) {
          segments.push_back({hits[0], hits[1]});
          segments.push_back({hits[2], hits[3]});
        } else {
          segments.push_back({hits[0], hits[3]});
          segments.push_back({hits[1], hits[2]});
        }
      }
    }
  }
  // chain segments through shared edge points
  std::multimap<EdgeKey, std::size_t> at;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    at.insert({segments[s].first, s});
    at.insert({segments[s].second, s});
  }
  std::vector<char> used(segments.size(), 0);
  auto next_from = [&](const EdgeKey& k) -> std::optional<std::size_t> {
    auto range = at.equal_range(k);
    for (auto it = range.first; it != range.second; ++it)
      if (!used[it->second]) return it->second;
    return std::nullopt;
  };
  std::vector<Polyline> out;
  for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    used[s0] = 1;
    std::vector<EdgeKey> chain{segments[s0].first, segments[s0].second};
    // extend forwards, then backwards
    for (int pass = 0; pass < 2; ++pass) {
      while (auto s = next_from(chain.back())) {
        used[*s] = 1;
        chain.push_back(segments[*s].first == chain.back() ? segments[*s].second : segments[*s].first);
      }
      std::reverse(chain.begin(), chain.end());
    }
    Polyline pl;
    pl.level = level;
    pl.closed = chain.size() > 2 && chain.front() == chain.back();
    for (const auto& k : chain) pl.points.push_back(points.at(k));
    out.push_back(std::move(pl));
  }
  return out;
}

void write_contours_csv(std::ostream& out, const std::vector<Polyline>& lines) {
  out << "contour,level,x,y\n" << std::setprecision(17);
  for (std::size_t c = 0; c < lines.size(); ++c)
    for (const Vec2& p : lines[c].points) out << c << ',' << lines[c].level << ',' << p.x << ',' << p.y << '\n';
}

}  // namespace nematic
