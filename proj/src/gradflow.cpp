#include "nematic/gradflow.hpp"

#include "nematic/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nematic {

struct GradientFlow::Solver {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;
};

namespace {

std::vector<char> ring_mask(const Grid2D& g, bool inner, bool outer) {
  std::vector<char> fixed(g.node_count(), 0);
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    const int i = g.node_i(k);
    if ((inner && i == 0) || (outer && i == g.nx())) fixed[k] = 1;
  }
  return fixed;
}

}  // namespace

FlowSetup rectangle_setup(const Params& p, int nx, int ny) {
  p.validate();
  FlowSetup s;
  s.grid = Grid2D::rectangle(-p.T, p.T, -p.H, p.H, nx, ny, true);
  s.params = p;
  s.fixed.assign(s.grid.node_count(), 0);
  const double b = std::sqrt(1.0 - p.a * p.a);
  s.boundary = Field2D{s.grid, std::vector<Vec2>(s.grid.node_count())};
  for (std::size_t k = 0; k < s.fixed.size(); ++k) {
    const int j = s.grid.node_j(k);
    if (j == 0) s.boundary.values[k] = {-b, p.a};
    if (j == ny) s.boundary.values[k] = {b, p.a};
    s.fixed[k] = (j == 0 || j == ny) ? 1 : 0;
  }
  s.description = "rectangle";
  return s;
}

FlowSetup disc_setup(const Params& p, int nr, int ntheta, const std::function<Vec2(Vec2)>& bc,
                     std::string description) {
  p.validate();
  FlowSetup s;
  s.grid = Grid2D::disc(p.R, nr, ntheta);
  s.params = p;
  s.fixed = ring_mask(s.grid, false, true);
  s.boundary = Field2D{s.grid, std::vector<Vec2>(s.grid.node_count())};
  for (std::size_t k = 0; k < s.fixed.size(); ++k)
    if (s.fixed[k]) s.boundary.values[k] = bc(s.grid.node(k));
  s.description = std::move(description);
  return s;
}

FlowSetup annulus_setup(const Params& p, int nr, int ntheta) {
  p.validate();
  if (!(p.R > 1.0)) throw std::invalid_argument("annulus needs R > 1");
  FlowSetup s;
  s.grid = Grid2D::polar(1.0, p.R, nr, ntheta);
  s.params = p;
  s.fixed = ring_mask(s.grid, true, true);
  s.boundary = Field2D{s.grid, std::vector<Vec2>(s.grid.node_count())};
  for (std::size_t k = 0; k < s.fixed.size(); ++k) {
    if (!s.fixed[k]) continue;
    const Vec2 q = s.grid.node(k);
    const Vec2 et = perp(q / norm(q));
    s.boundary.values[k] = s.grid.node_i(k) == 0 ? -et : et;
  }
  s.description = "annulus";
  return s;
}

std::function<Vec2(Vec2)> disc_boundary_data(const std::string& name, double R) {
  if (name == "tangential") return [](Vec2 q) { return perp(q / norm(q)); };
  if (name == "hedgehog") return [](Vec2 q) { return q / norm(q); };
  if (name == "deg-minus-one") return [R](Vec2 q) { return Vec2{q.x, -q.y} / R; };
  throw std::invalid_argument("unknown disc boundary data '" + name + "' (tangential, hedgehog, deg-minus-one)");
}

Field2D random_init(const FlowSetup& setup, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  Field2D f{setup.grid, std::vector<Vec2>(setup.grid.node_count())};
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const double th = angle(rng);
    f.values[k] = setup.fixed[k] ? setup.boundary.values[k] : unit_from_angle(th);
  }
  return f;
}

Field2D extension_init(const FlowSetup& setup) {
  const Grid2D& g = setup.grid;
  Field2D f{g, std::vector<Vec2>(g.node_count())};
  if (g.kind() == GridKind::rectangle) {
    const double b = std::sqrt(1.0 - setup.params.a * setup.params.a);
    for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = {b * g.node(k).y / setup.params.H, setup.params.a};
  } else {
    // radial scaling of the outer ring values
    const int top = g.nx();
    for (std::size_t k = 0; k < f.values.size(); ++k) {
      const double r = g.coord_x(g.node_i(k));
      f.values[k] = setup.boundary.values[g.index(top, g.node_j(k))] * (r / g.x1());
    }
  }
  for (std::size_t k = 0; k < f.values.size(); ++k)
    if (setup.fixed[k]) f.values[k] = setup.boundary.values[k];
  return f;
}

GradientFlow::GradientFlow(FlowSetup setup, FlowOptions options)
    : setup_(std::move(setup)), options_(options), solver_(std::make_unique<Solver>()) {
  setup_.params.validate();
  const std::size_t n = setup_.grid.node_count();
  if (setup_.fixed.size() != n || setup_.boundary.values.size() != n)
    throw std::invalid_argument("flow setup arrays do not match the grid");
  elements_ = triangulate(setup_.grid);
  mass_ = lumped_mass(setup_.grid, elements_);
  free_index_.assign(n, -1);
  for (std::size_t k = 0; k < n; ++k)
    if (!setup_.fixed[k]) free_index_[k] = n_free_++;
  if (n_free_ == 0) throw std::invalid_argument("flow setup has no free nodes");

  const double eps = setup_.params.eps, L = setup_.params.L;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(elements_.size() * 54);
  for (const auto& e : elements_) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double kab = eps * e.area * dot(e.grad[a], e.grad[b]);
        const int ra = static_cast<int>(2 * e.node[a]), cb = static_cast<int>(2 * e.node[b]);
        trip.emplace_back(ra, cb, kab);
        trip.emplace_back(ra + 1, cb + 1, kab);
        // div-div: b-vector entries grad.x for u1, grad.y for u2
        const double ga[2] = {e.grad[a].x, e.grad[a].y}, gb[2] = {e.grad[b].x, e.grad[b].y};
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) trip.emplace_back(ra + c, cb + d, L * e.area * ga[c] * gb[d]);
      }
    }
  }
  const int dofs = static_cast<int>(2 * n);
  A_.resize(dofs, dofs);
  A_.setFromTriplets(trip.begin(), trip.end());

  Eigen::VectorXd xc = Eigen::VectorXd::Zero(dofs);
  for (std::size_t k = 0; k < n; ++k) {
    if (!setup_.fixed[k]) continue;
    xc[2 * k] = setup_.boundary.values[k].x;
    xc[2 * k + 1] = setup_.boundary.values[k].y;
  }
  const Eigen::VectorXd full = A_ * xc;
  fixed_load_.resize(2 * n_free_);
  std::vector<Eigen::Triplet<double>> ff;
  for (std::size_t k = 0; k < n; ++k) {
    const int f = free_index_[k];
    if (f < 0) continue;
    fixed_load_[2 * f] = full[2 * k];
    fixed_load_[2 * f + 1] = full[2 * k + 1];
  }
  for (int f = 0; f < n_free_; ++f) {
    // explicit zeros keep the node blocks in the pattern for the reaction Jacobian
    ff.emplace_back(2 * f, 2 * f + 1, 0.0);
    ff.emplace_back(2 * f + 1, 2 * f, 0.0);
  }
  for (int col = 0; col < A_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A_, col); it; ++it) {
      const int fr = free_index_[it.row() / 2], fc = free_index_[it.col() / 2];
      if (fr < 0 || fc < 0) continue;
      ff.emplace_back(2 * fr + it.row() % 2, 2 * fc + it.col() % 2, it.value());
    }
  }
  A_ff_.resize(2 * n_free_, 2 * n_free_);
  A_ff_.setFromTriplets(ff.begin(), ff.end());
}

GradientFlow::~GradientFlow() = default;

EnergyBreakdown GradientFlow::energy(const Field2D& field) const {
  return eval_E_eps(field, setup_.params, elements_, mass_);
}

std::vector<double> GradientFlow::reaction(const Field2D& field) const {
  // per unit mass: (2/eps)(|u|^2 - 1) u
  std::vector<double> r(2 * field.values.size());
  const double c = 2.0 / setup_.params.eps;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const Vec2 u = field.values[k];
    const double w = c * (dot(u, u) - 1.0);
    r[2 * k] = w * u.x;
    r[2 * k + 1] = w * u.y;
  }
  return r;
}

std::vector<Vec2> GradientFlow::gradient(const Field2D& field) const {
  const std::size_t n = field.values.size();
  if (n != setup_.grid.node_count()) throw std::invalid_argument("field size mismatch");
  Eigen::VectorXd x(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    x[2 * k] = field.values[k].x;
    x[2 * k + 1] = field.values[k].y;
  }
  const Eigen::VectorXd ax = A_ * x;
  const auto r = reaction(field);
  std::vector<Vec2> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = {ax[2 * k] + mass_[k] * r[2 * k], ax[2 * k + 1] + mass_[k] * r[2 * k + 1]};
  return g;
}

Field2D GradientFlow::rhs(const Field2D& field) const {
  const auto g = gradient(field);
  Field2D out{field.grid, std::vector<Vec2>(g.size())};
  for (std::size_t k = 0; k < g.size(); ++k)
    if (!setup_.fixed[k]) out.values[k] = g[k] * (-1.0 / mass_[k]);
  return out;
}

double GradientFlow::residual(const Field2D& field) const {
  const Field2D r = rhs(field);
  double worst = 0.0;
  for (const Vec2& v : r.values) worst = std::max(worst, std::max(std::abs(v.x), std::abs(v.y)));
  return worst;
}

FlowState GradientFlow::start(Field2D init) const {
  if (init.values.size() != setup_.grid.node_count()) throw std::invalid_argument("initial field size mismatch");
  for (std::size_t k = 0; k < init.values.size(); ++k)
    if (setup_.fixed[k]) init.values[k] = setup_.boundary.values[k];
  FlowState st;
  st.field = std::move(init);
  st.dt = options_.dt0 > 0 ? options_.dt0 : 0.25 * setup_.params.eps;
  st.trace.push_back({0.0, energy(st.field)});
  st.residual = residual(st.field);
  return st;
}

// Per-node 2x2 block J of the implicit reaction part, in units of mass.
// With linearization it is the positive part of the reaction Jacobian, (2/eps)(max(|u|^2-1,0) I + 2 u u^T),
// which keeps the system SPD; the constant shift S/eps is added on top.
std::array<double, 3> GradientFlow::reaction_block(Vec2 u) const {
  const double eps = setup_.params.eps;
  const double s = options_.stabilization / eps;
  if (!options_.linearize) return {s, 0.0, s};
  const double c = 2.0 / eps, w = std::max(0.0, dot(u, u) - 1.0);
  return {s + c * (w + 2.0 * u.x * u.x), c * 2.0 * u.x * u.y, s + c * (w + 2.0 * u.y * u.y)};
}

void GradientFlow::factor(double dt, const Field2D& field) {
  if (!options_.linearize && dt == factored_dt_) return;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * static_cast<std::size_t>(n_free_));
  for (std::size_t k = 0; k < free_index_.size(); ++k) {
    const int f = free_index_[k];
    if (f < 0) continue;
    const auto J = reaction_block(field.values[k]);
    const double m = mass_[k];
    trip.emplace_back(2 * f, 2 * f, m * (1.0 / dt + J[0]));
    trip.emplace_back(2 * f, 2 * f + 1, m * J[1]);
    trip.emplace_back(2 * f + 1, 2 * f, m * J[1]);
    trip.emplace_back(2 * f + 1, 2 * f + 1, m * (1.0 / dt + J[2]));
  }
  Eigen::SparseMatrix<double> blocks(A_ff_.rows(), A_ff_.cols());
  blocks.setFromTriplets(trip.begin(), trip.end());
  const Eigen::SparseMatrix<double> sys = A_ff_ + blocks;
  if (!solver_->analyzed) {
    solver_->ldlt.analyzePattern(sys);
    solver_->analyzed = true;
  }
  solver_->ldlt.factorize(sys);
  if (solver_->ldlt.info() != Eigen::Success) throw NoConvergence("implicit operator factorization failed");
  factored_dt_ = dt;
}

void GradientFlow::step(FlowState& st) {
  const double E0 = st.trace.back().energy.total;
  const double slack = 1e-12 * std::max(1.0, std::abs(E0));
  const auto r = reaction(st.field);
  while (true) {
    if (st.dt < options_.dt_min) throw NoConvergence("time step underflow: the configuration does not relax");
    factor(st.dt, st.field);
    Eigen::VectorXd b(2 * n_free_);
    for (std::size_t k = 0; k < free_index_.size(); ++k) {
      const int f = free_index_[k];
      if (f < 0) continue;
      const Vec2 u = st.field.values[k];
      const auto J = reaction_block(u);
      const double d = 1.0 / st.dt;
      b[2 * f] = mass_[k] * ((d + J[0]) * u.x + J[1] * u.y - r[2 * k]);
      b[2 * f + 1] = mass_[k] * (J[1] * u.x + (d + J[2]) * u.y - r[2 * k + 1]);
    }
    b -= fixed_load_;
    const Eigen::VectorXd x = solver_->ldlt.solve(b);
    Field2D next = st.field;
    for (std::size_t k = 0; k < free_index_.size(); ++k) {
      const int f = free_index_[k];
      if (f >= 0) next.values[k] = {x[2 * f], x[2 * f + 1]};
    }
    const EnergyBreakdown E1 = energy(next);
    if (std::isfinite(E1.total) && E1.total <= E0 + slack) {
      st.time += st.dt;
      st.field = std::move(next);
      st.trace.push_back({st.time, E1});
      ++st.accepted;
      if (++st.streak >= options_.grow_after && st.dt < options_.dt_max) {
        st.dt = std::min(options_.dt_max, 2.0 * st.dt);
        st.streak = 0;
      }
      return;
    }
    ++st.rejected;
    st.streak = 0;
    st.dt *= 0.5;
  }
}

FlowState GradientFlow::run_to_equilibrium(Field2D init, const Observer& on_step) {
  if (!(options_.tol > 0)) throw std::invalid_argument("tol must be > 0");
  FlowState st = start(std::move(init));
  while (true) {
    if (st.residual < options_.tol) {
      st.converged = true;
      break;
    }
    if (st.time >= options_.max_time || st.accepted >= options_.max_steps) {
      st.max_time_reached = true;
      break;
    }
    const double before = st.trace.back().energy.total, t0 = st.time;
    step(st);
    st.residual = residual(st.field);
    if (on_step) on_step(st);
    const double rate = (before - st.trace.back().energy.total) / (st.time - t0);
    if (rate < options_.tol * options_.tol) {
      st.converged = true;
      break;
    }
  }
  return st;
}

FlowState run_continuation(const FlowSetup& setup, const std::vector<double>& eps_schedule, Field2D init,
                           const FlowOptions& options) {
  std::vector<double> sched;
  for (double e : eps_schedule)
    if (e > setup.params.eps) sched.push_back(e);
  if (!std::is_sorted(sched.rbegin(), sched.rend())) throw std::invalid_argument("eps schedule must decrease");
  sched.push_back(setup.params.eps);
  FlowState st;
  for (double e : sched) {
    FlowSetup stage = setup;
    stage.params.eps = e;
    GradientFlow flow(std::move(stage), options);
    st = flow.run_to_equilibrium(std::move(init));
    init = st.field;
  }
  return st;
}

std::vector<double> nodal_divergence(const Field2D& field) {
  const auto el = triangulate(field.grid);
  std::vector<double> acc(field.values.size(), 0.0), w(field.values.size(), 0.0);
  for (const auto& e : el) {
    double div = 0.0;
    for (int k = 0; k < 3; ++k) div += dot(field.values[e.node[k]], e.grad[k]);
    for (std::size_t k : e.node) {
      acc[k] += e.area * div;
      w[k] += e.area;
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] /= w[k];
  return acc;
}

Diagnostics diagnostics(const Field2D& field, const std::vector<double>& div_levels,
                        const std::vector<double>& angle_levels) {
  Diagnostics d;
  d.divergence = nodal_divergence(field);
  d.angle.resize(field.values.size());
  for (std::size_t k = 0; k < field.values.size(); ++k) d.angle[k] = std::atan2(field.values[k].y, field.values[k].x);
  for (double lv : div_levels) {
    auto c = marching_squares(field.grid, d.divergence, lv);
    d.div_contours.insert(d.div_contours.end(), c.begin(), c.end());
  }
  for (double lv : angle_levels) {
    auto c = marching_squares(field.grid, d.angle, lv, 2.0 * kPi);
    d.angle_contours.insert(d.angle_contours.end(), c.begin(), c.end());
  }
  return d;
}

std::vector<Vec2> wall_core_points(const Field2D& field, double deficit) {
  std::vector<Vec2> out;
  for (std::size_t k = 0; k < field.values.size(); ++k)
    if (1.0 - dot(field.values[k], field.values[k]) > deficit) out.push_back(field.grid.node(k));
  return out;
}

std::vector<RingMaximum> ring_deficit_maxima(const Field2D& field, double threshold) {
  const Grid2D& g = field.grid;
  if (g.kind() != GridKind::polar) throw std::invalid_argument("ring maxima need a polar grid");
  std::vector<RingMaximum> out;
  const int nt = g.nodes_y();
  auto def = [&](int i, int j) {
    const Vec2 u = field.values[g.index(i, j)];
    return 1.0 - dot(u, u);
  };
  for (int i = 0; i < g.nodes_x(); ++i) {
    for (int j = 0; j < nt; ++j) {
      const double d = def(i, j);
      if (d > threshold && d > def(i, j - 1) && d >= def(i, j + 1)) out.push_back({i, g.node(g.index(i, j)), d});
    }
  }
  return out;
}

}  // namespace nematic
