#include "nematic/cli.hpp"

#include "nematic/annulus.hpp"
#include "nematic/characteristics.hpp"
#include "nematic/crosstie.hpp"
#include "nematic/disc.hpp"
#include "nematic/energy.hpp"
#include "nematic/gradflow.hpp"
#include "nematic/rect1d.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace nematic {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"disc-tangential", "disc-hedgehog", "disc-deg-minus-one",
                                                 "annulus",         "rect-1d",       "crosstie",
                                                 "crosstie-sweep",  "gradflow",      "energy-eval"};
  return names;
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["subcommand"] = c.subcommand;
  j["L"] = c.params.L;
  j["eps"] = c.params.eps;
  j["H"] = c.params.H;
  j["T"] = c.params.T;
  j["R"] = c.params.R;
  j["a"] = c.params.a;
  j["nx"] = c.nx;
  j["ny"] = c.ny;
  j["out"] = c.out;
  j["tol"] = c.tol;
  j["dt"] = c.dt;
  j["max_time"] = c.max_time;
  j["max_steps"] = c.max_steps;
  j["seed"] = c.seed;
  j["domain"] = c.domain;
  j["bc"] = c.bc;
  j["init"] = c.init;
  j["lmin"] = c.lmin;
  j["lmax"] = c.lmax;
  j["step"] = c.step;
  j["eps_ladder"] = c.eps_ladder;
  j["sign"] = c.sign;
  j["field"] = c.field;
  j["checkpoint_every"] = c.checkpoint_every;
  j["eps_schedule"] = c.eps_schedule;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a flat JSON object");
  RunConfig c;
  const RunConfig d;
  static const std::vector<std::string> known = {
      "subcommand", "L",    "eps",    "H",     "T",    "R",          "a",    "nx",    "ny",
      "out",        "tol",  "dt",     "max_time", "max_steps", "seed", "domain", "bc", "init",
      "lmin",       "lmax", "step",   "eps_ladder", "sign", "field", "checkpoint_every", "eps_schedule"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("unknown config key '" + it.key() + "'");
  c.subcommand = j.value("subcommand", d.subcommand);
  c.params.L = j.value("L", d.params.L);
  c.params.eps = j.value("eps", d.params.eps);
  c.params.H = j.value("H", d.params.H);
  c.params.T = j.value("T", d.params.T);
  c.params.R = j.value("R", d.params.R);
  c.params.a = j.value("a", d.params.a);
  c.nx = j.value("nx", d.nx);
  c.ny = j.value("ny", d.ny);
  c.out = j.value("out", d.out);
  c.tol = j.value("tol", d.tol);
  c.dt = j.value("dt", d.dt);
  c.max_time = j.value("max_time", d.max_time);
  c.max_steps = j.value("max_steps", d.max_steps);
  c.seed = j.value("seed", d.seed);
  c.domain = j.value("domain", d.domain);
  c.bc = j.value("bc", d.bc);
  c.init = j.value("init", d.init);
  c.lmin = j.value("lmin", d.lmin);
  c.lmax = j.value("lmax", d.lmax);
  c.step = j.value("step", d.step);
  c.eps_ladder = j.value("eps_ladder", d.eps_ladder);
  c.sign = j.value("sign", d.sign);
  c.field = j.value("field", d.field);
  c.checkpoint_every = j.value("checkpoint_every", d.checkpoint_every);
  c.eps_schedule = j.value("eps_schedule", d.eps_schedule);
  return c;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> out;
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), c.subcommand) == names.end())
    out.push_back("unknown subcommand '" + c.subcommand + "'");
  for (auto& v : c.params.violations()) out.push_back(v);
  if (c.nx < 4 || c.ny < 4) out.emplace_back("grid counts nx, ny must be >= 4");
  if (c.out.empty()) out.emplace_back("output directory must be set");
  if (c.subcommand == "disc-hedgehog" && c.sign != 1 && c.sign != -1) out.emplace_back("sign must be +1 or -1");
  if (c.subcommand == "annulus" && !(c.params.R > 1.0)) out.emplace_back("annulus needs R > 1");
  if (c.subcommand == "crosstie-sweep" && !(c.lmin > 0 && c.lmax >= c.lmin && c.step > 0))
    out.emplace_back("sweep needs 0 < lmin <= lmax and step > 0");
  if (c.subcommand == "gradflow" || c.subcommand == "energy-eval") {
    if (c.domain != "rect" && c.domain != "disc" && c.domain != "annulus")
      out.emplace_back("domain must be rect, disc or annulus");
    if (c.domain == "disc" && c.bc != "tangential" && c.bc != "hedgehog" && c.bc != "deg-minus-one")
      out.emplace_back("disc bc must be tangential, hedgehog or deg-minus-one");
    if (c.domain == "annulus" && !(c.params.R > 1.0)) out.emplace_back("annulus needs R > 1");
  }
  if (c.subcommand == "gradflow") {
    if (!(c.tol > 0)) out.emplace_back("tol must be > 0");
    if (!(c.dt >= 0)) out.emplace_back("dt must be >= 0");
    if (!(c.max_time > 0)) out.emplace_back("max_time must be > 0");
    static const std::vector<std::string> inits = {"random", "extension", "crosstie", "construction"};
    if (std::find(inits.begin(), inits.end(), c.init) == inits.end())
      out.emplace_back("init must be random, extension, crosstie or construction");
    if (c.init == "crosstie" && c.domain != "rect") out.emplace_back("crosstie init needs the rect domain");
    if (c.init == "construction" && !(c.domain == "disc" && c.bc == "deg-minus-one"))
      out.emplace_back("construction init needs the disc with deg-minus-one data");
    double prev = std::numeric_limits<double>::infinity();
    for (double e : c.eps_schedule) {
      if (!(e > c.params.eps && e < prev)) {
        out.emplace_back("eps_schedule must decrease strictly and stay above eps");
        break;
      }
      prev = e;
    }
  }
  if (c.subcommand == "energy-eval" && c.field.empty()) out.emplace_back("energy-eval needs a field CSV");
  return out;
}

namespace {

struct Out {
  fs::path dir;

  std::ofstream open(const std::string& name) const {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << std::setprecision(17);
    return f;
  }
  void json(const std::string& name, const ordered_json& j) const {
    auto f = open(name);
    f << j.dump(2) << '\n';
  }
};

ordered_json energy_json(const EnergyBreakdown& e) {
  ordered_json j;
  j["grad"] = e.grad;
  j["potential"] = e.potential;
  j["bulk_div"] = e.bulk_div;
  j["wall_interior"] = e.wall_interior;
  j["wall_boundary"] = e.wall_boundary;
  j["total"] = e.total;
  return j;
}

void write_families(const Out& o, const PiecewiseCriticalField& f) {
  int k = 0;
  for (const auto& fp : f.families) {
    auto s = o.open("family_" + std::to_string(k++) + ".csv");
    write_family_csv(s, fp.family, 32, 32);
  }
}

void write_walls(const Out& o, const std::vector<WallPiece>& walls) {
  auto f = o.open("walls.csv");
  f << "wall,x,y,nx,ny,plus1,plus2,minus1,minus2\n";
  for (std::size_t w = 0; w < walls.size(); ++w) {
    const JumpSegment seg = walls[w].sample(64);
    for (const auto& v : seg.vertices)
      f << w << ',' << v.p.x << ',' << v.p.y << ',' << v.normal.x << ',' << v.normal.y << ',' << v.plus.x << ','
        << v.plus.y << ',' << v.minus.x << ',' << v.minus.y << '\n';
  }
}

int run_disc_tangential(const RunConfig& c, const Out& o, std::ostream& log) {
  const auto sol = tangential_solution(c.params.R);
  const EnergyBreakdown e = eval_E0_piecewise(sol, c.params);
  ordered_json j;
  j["closed_form"] = 0.0;
  j["energy"] = energy_json(e);
  o.json("energy.json", j);
  write_families(o, sol);
  log << "E0 = " << e.total << '\n';
  return 0;
}

int run_disc_hedgehog(const RunConfig& c, const Out& o, std::ostream& log) {
  const auto sol = hedgehog_solution(c.sign);
  Params p = c.params;
  p.R = 1.0;
  const EnergyBreakdown e = eval_E0_piecewise(sol, p);
  ordered_json j;
  j["closed_form"] = 2.0 * kPi * c.params.L;
  j["energy"] = energy_json(e);
  o.json("energy.json", j);
  write_families(o, sol);
  log << "E0 = " << e.total << " (2 pi L = " << 2.0 * kPi * c.params.L << ")\n";
  return 0;
}

int run_disc_deg_minus_one(const RunConfig& c, const Out& o, std::ostream& log) {
  const auto sol = build_deg_minus_one(c.params.R, c.params.L);
  const EnergyBreakdown e = eval_E0_piecewise(sol.field, c.params);
  ordered_json j;
  j["s0"] = sol.s0;
  j["diagonal_residual"] = deg_minus_one_diagonal_residual(sol, 256);
  j["energy"] = energy_json(e);
  o.json("energy.json", j);
  write_families(o, sol.field);
  write_walls(o, sol.field.walls);
  const Grid2D g = Grid2D::disc(c.params.R * (1.0 - 1e-9), c.nx, c.ny);
  const Field2D f = sample_analytic(g, [&](Vec2 p) { return deg_minus_one_field_eval(sol, p).u; });
  write_field_csv((o.dir / "field.csv").string(), f);
  log << "E0 = " << e.total << '\n';
  return 0;
}

int run_annulus(const RunConfig& c, const Out& o, std::ostream& log) {
  const double R = c.params.R, L = c.params.L;
  const AnnulusRadialSolution s = annulus_minimizer(R, L);
  ordered_json j;
  j["regime"] = s.regime;
  j["rho"] = s.rho;
  j["a"] = s.a;
  j["energy"] = s.energy;
  j["nbc_residual"] = s.nbc_residual;
  j["jump_residual"] = s.jump_residual;
  j["small_L_bound"] = small_L_interior_bound(R);
  j["inner_boundary_energy"] = 8.0 * kPi / 3.0;
  j["critical_walls"] = ordered_json::array();
  for (const auto& w : radial_critical_walls(R, L))
    j["critical_walls"].push_back({{"rho", w.rho}, {"a", w.a}, {"energy", w.energy}});
  o.json("annulus.json", j);
  if (!s.wall_at_boundary) {
    auto f = o.open("profile.csv");
    f << "r,p,q,div\n";
    for (int k = 0; k <= 256; ++k) {
      const double r = 1.0 + (R - 1.0) * k / 256.0;
      f << r << ',' << radial_p(r, s.rho, s.a, R) << ',' << radial_q(r, s.rho, s.a, R) << ','
        << radial_div(r, s.rho, s.a, R) << '\n';
    }
  }
  log << s.regime << " wall at rho = " << s.rho << ", E0 = " << s.energy << '\n';
  return 0;
}

int run_rect_1d(const RunConfig& c, const Out& o, std::ostream& log) {
  const double L = c.params.L, H = c.params.H, a = c.params.a;
  const OneDProfile prof = minimizer_profile(L, H, a);
  Params p = c.params;
  const EnergyBreakdown e = eval_E0_1d(prof, p);
  ordered_json j;
  j["M"] = prof.M;
  j["energy"] = min_energy_1d(L, H, a);
  j["profile_energy"] = energy_json(e);
  if (a == 0.0 && L / H == 2.0) j["note"] = "tie: tent and step profiles both reach 4/3";
  {
    auto f = o.open("profile.csv");
    f << "y,u1,u2\n";
    for (int k = 0; k <= 400; ++k) {
      const double y = -H + 2.0 * H * k / 400.0;
      const Vec2 u = prof.u_at(y);
      f << y << ',' << u.x << ',' << u.y << '\n';
    }
  }
  if (c.eps_ladder) {
    const auto rows = eps_ladder(L, H, a, {c.params.eps, c.params.eps / 2, c.params.eps / 4});
    auto f = o.open("ladder.csv");
    f << "eps,n,energy,gap\n";
    ordered_json lj = ordered_json::array();
    for (const auto& r : rows) {
      f << r.eps << ',' << r.n << ',' << r.energy << ',' << r.gap << '\n';
      lj.push_back({{"eps", r.eps}, {"energy", r.energy}, {"gap", r.gap}});
    }
    j["eps_ladder"] = lj;
  }
  o.json("result.json", j);
  log << "M = " << prof.M << ", energy = " << j["energy"].get<double>() << '\n';
  return 0;
}

int run_crosstie(const RunConfig& c, const Out& o, std::ostream& log) {
  const CrossTieSolution sol = build_crosstie(c.params.L, c.params.H);
  const EnergyBreakdown e = crosstie_energy(sol);
  const CrossTieInvariants inv = crosstie_invariants(sol);
  ordered_json j;
  j["L_over_H"] = sol.L_over_H;
  j["T_tilde"] = sol.T_tilde;
  j["T"] = sol.T;
  j["alpha"] = sol.alpha;
  j["t1_star"] = sol.t1_star;
  j["energy"] = energy_json(e);
  j["energy_per_length"] = e.total / (2.0 * sol.T);
  j["one_d_energy_per_length"] = min_energy_1d(c.params.L, c.params.H, 0.0);
  j["tangency"] = inv.tangency;
  j["wall_residual"] = inv.wall_residual;
  j["theta2_increasing"] = inv.theta2_increasing;
  j["alpha_t1"] = inv.alpha_t1;
  j["foliation"] = {inv.foliation[0], inv.foliation[1], inv.foliation[2]};
  o.json("energy.json", j);
  write_families(o, sol.field);
  write_walls(o, sol.field.walls);
  const Grid2D g = Grid2D::rectangle(-sol.T, sol.T, -sol.H, sol.H, c.nx, c.ny, true);
  Field2D f{g, std::vector<Vec2>(g.node_count())};
  int missing = 0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    try {
      f.values[k] = crosstie_field_eval(sol, g.node(k)).u;
    } catch (const NoConvergence&) {
      f.values[k] = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
      ++missing;
    }
  }
  write_field_csv((o.dir / "field.csv").string(), f);
  if (missing == 0) {
    const Diagnostics d = diagnostics(f, {}, {-0.75 * kPi, -0.5 * kPi, -0.25 * kPi, 0.0, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi});
    auto s = o.open("contours_angle.csv");
    write_contours_csv(s, d.angle_contours);
  }
  log << "energy per length " << e.total / (2.0 * sol.T) << " vs 1D " << j["one_d_energy_per_length"].get<double>()
      << (missing ? " (" + std::to_string(missing) + " unevaluated nodes)" : std::string()) << '\n';
  return 0;
}

int run_crosstie_sweep(const RunConfig& c, const Out& o, std::ostream& log) {
  const CrossingResult r = find_crossing(c.params.H, c.lmin, c.lmax, c.step);
  auto f = o.open("sweep.csv");
  f << "L_over_H,E_crosstie,E_1d,gap\n";
  for (const auto& row : r.scan) f << row.L_over_H << ',' << row.E_crosstie << ',' << row.E_1d << ',' << row.gap << '\n';
  ordered_json j;
  j["L0"] = r.L0 ? ordered_json(*r.L0) : ordered_json(nullptr);
  j["L1"] = r.L1 ? ordered_json(*r.L1) : ordered_json(nullptr);
  if (!r.message.empty()) j["message"] = r.message;
  o.json("crossing.json", j);
  log << "L0 = " << (r.L0 ? std::to_string(*r.L0) : "none") << ", L1 = " << (r.L1 ? std::to_string(*r.L1) : "none")
      << '\n';
  return 0;
}

FlowSetup flow_setup(const RunConfig& c, Params& p) {
  if (c.domain == "rect") {
    if (c.init == "crosstie") p.T = p.H * solve_Ttilde(p.L / p.H);
    return rectangle_setup(p, c.nx, c.ny);
  }
  if (c.domain == "disc") return disc_setup(p, c.nx, c.ny, disc_boundary_data(c.bc, p.R), "disc " + c.bc);
  return annulus_setup(p, c.nx, c.ny);
}

Field2D flow_init(const RunConfig& c, const FlowSetup& s) {
  if (c.init == "random") return random_init(s, c.seed);
  if (c.init == "extension") return extension_init(s);
  if (c.init == "crosstie") {
    const CrossTieSolution sol = build_crosstie(s.params.L, s.params.H);
    return sample_analytic(s.grid, [&](Vec2 p) {
      try {
        return crosstie_field_eval(sol, p).u;
      } catch (const NoConvergence&) {
        return Vec2{0.0, 0.0};
      }
    });
  }
  const DegMinusOneSolution sol = build_deg_minus_one(s.params.R, s.params.L);
  return sample_analytic(s.grid, [&](Vec2 p) {
    try {
      return deg_minus_one_field_eval(sol, p * (1.0 - 1e-12)).u;
    } catch (const NoConvergence&) {
      return Vec2{0.0, 0.0};
    }
  });
}

void write_diagnostics(const Out& o, const Field2D& f) {
  const Diagnostics d = diagnostics(f, {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0},
                                    {-0.75 * kPi, -0.5 * kPi, -0.25 * kPi, 0.0, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi});
  auto s = o.open("diagnostics.csv");
  s << "x,y,div,theta\n";
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const Vec2 p = f.grid.node(k);
    s << p.x << ',' << p.y << ',' << d.divergence[k] << ',' << d.angle[k] << '\n';
  }
  auto cd = o.open("contours_div.csv");
  write_contours_csv(cd, d.div_contours);
  auto ca = o.open("contours_angle.csv");
  write_contours_csv(ca, d.angle_contours);
}

int run_gradflow(const RunConfig& c, const Out& o, std::ostream& log) {
  Params p = c.params;
  FlowSetup s = flow_setup(c, p);
  FlowOptions opt;
  opt.dt0 = c.dt;
  opt.tol = c.tol;
  opt.max_time = c.max_time;
  opt.max_steps = c.max_steps;
  Field2D init = flow_init(c, s);
  write_field_csv((o.dir / "snapshot_0.csv").string(), init);
  for (double e : c.eps_schedule) {
    FlowSetup stage = s;
    stage.params.eps = e;
    GradientFlow coarse(std::move(stage), opt);
    const FlowState cs = coarse.run_to_equilibrium(std::move(init));
    init = cs.field;
    log << "stage eps = " << e << ": E_eps = " << cs.trace.back().energy.total << " after " << cs.accepted
        << " steps\n";
  }
  GradientFlow flow(s, opt);
  int snap = 1;
  const FlowState st = flow.run_to_equilibrium(init, [&](const FlowState& cur) {
    if (c.checkpoint_every > 0 && cur.accepted % c.checkpoint_every == 0)
      write_field_csv((o.dir / ("snapshot_" + std::to_string(snap++) + ".csv")).string(), cur.field);
  });
  {
    auto f = o.open("trace.csv");
    f << "t,total,grad,potential,bulk_div\n";
    for (const auto& tp : st.trace)
      f << tp.time << ',' << tp.energy.total << ',' << tp.energy.grad << ',' << tp.energy.potential << ','
        << tp.energy.bulk_div << '\n';
  }
  write_field_csv((o.dir / "final.csv").string(), st.field);
  write_diagnostics(o, st.field);
  ordered_json j;
  j["energy"] = energy_json(st.trace.back().energy);
  if (c.domain == "rect") j["energy_per_length"] = st.trace.back().energy.total / (2.0 * p.T);
  j["T"] = p.T;
  j["time"] = st.time;
  j["accepted"] = st.accepted;
  j["rejected"] = st.rejected;
  j["residual"] = st.residual;
  j["converged"] = st.converged;
  j["max_time_reached"] = st.max_time_reached;
  o.json("final.json", j);
  log << "E_eps = " << st.trace.back().energy.total << " after " << st.accepted << " steps, t = " << st.time
      << (st.converged ? "" : " (not converged)") << '\n';
  return 0;
}

std::vector<Vec2> read_field_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(f, line);
  if (line != "x,y,u1,u2") throw std::invalid_argument("field CSV must have header x,y,u1,u2");
  std::vector<Vec2> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[4];
    for (double& x : v) {
      if (!std::getline(ss, cell, ',')) throw std::invalid_argument("short row in " + path);
      x = std::stod(cell);
    }
    out.push_back({v[2], v[3]});
  }
  return out;
}

int run_energy_eval(const RunConfig& c, const Out& o, std::ostream& log) {
  Params p = c.params;
  const FlowSetup s = flow_setup(c, p);
  Field2D f{s.grid, read_field_csv(c.field)};
  if (f.values.size() != s.grid.node_count())
    throw std::invalid_argument("field CSV has " + std::to_string(f.values.size()) + " rows, grid has " +
                                std::to_string(s.grid.node_count()) + " nodes");
  const EnergyBreakdown e = eval_E_eps(f, p);
  auto out = o.open("energy.json");
  write_energy_json(out, e, p);
  log << "E_eps = " << e.total << '\n';
  return 0;
}

}  // namespace

int dispatch(const RunConfig& c, std::ostream& log) {
  const auto problems = validate(c);
  if (!problems.empty()) {
    for (const auto& m : problems) log << "invalid config: " << m << '\n';
    return 2;
  }
  Out o{c.out};
  fs::create_directories(o.dir);
  o.json("config.json", to_json(c));
  try {
    if (c.subcommand == "disc-tangential") return run_disc_tangential(c, o, log);
    if (c.subcommand == "disc-hedgehog") return run_disc_hedgehog(c, o, log);
    if (c.subcommand == "disc-deg-minus-one") return run_disc_deg_minus_one(c, o, log);
    if (c.subcommand == "annulus") return run_annulus(c, o, log);
    if (c.subcommand == "rect-1d") return run_rect_1d(c, o, log);
    if (c.subcommand == "crosstie") return run_crosstie(c, o, log);
    if (c.subcommand == "crosstie-sweep") return run_crosstie_sweep(c, o, log);
    if (c.subcommand == "gradflow") return run_gradflow(c, o, log);
    if (c.subcommand == "energy-eval") return run_energy_eval(c, o, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace nematic
