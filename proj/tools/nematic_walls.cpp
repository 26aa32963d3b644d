#include "nematic/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

struct Help {
  const char* name;
  const char* text;
};

// one line per subcommand and what it writes
constexpr Help kHelp[] = {
    {"disc-tangential", "u = e_theta on a disc: zero-energy critical point, family CSV"},
    {"disc-hedgehog", "radial data on the unit disc: hedgehog energy 2 pi L by quadrature and closed form"},
    {"disc-deg-minus-one", "degree -1 data: three-region characteristics, diagonal walls, sampled field"},
    {"annulus", "annulus with e_theta data: radial single-wall state, energy and residuals"},
    {"rect-1d", "one-dimensional minimizer on (-H, H): wall height M, energy, tanh recovery ladder"},
    {"crosstie", "cross-tie critical point on one period: energy per length, invariants, field and angle contours"},
    {"crosstie-sweep", "energy per length of cross-tie and 1D states over L/H, with the crossing values"},
    {"gradflow", "gradient flow of E_eps on rect, disc or annulus: trace, snapshots, contours"},
    {"energy-eval", "E_eps of a nodal field CSV on the grid of a gradflow configuration"},
};

void add_common(CLI::App* s, nematic::RunConfig& c) {
  s->add_option("--L", c.params.L, "elastic constant");
  s->add_option("--eps", c.params.eps, "wall width parameter");
  s->add_option("--H", c.params.H, "half height of the rectangle");
  s->add_option("--T", c.params.T, "half period of the rectangle");
  s->add_option("--R", c.params.R, "disc or outer annulus radius");
  s->add_option("--a", c.params.a, "normal boundary component on the rectangle");
  s->add_option("--nx", c.nx, "cells along x (or r)");
  s->add_option("--ny", c.ny, "cells along y (or theta)");
  s->add_option("--out", c.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for nematic film wall energies"};
  app.require_subcommand(1);
  nematic::RunConfig cfg;
  std::string config_path;

  for (const auto& h : kHelp) {
    CLI::App* s = app.add_subcommand(h.name, h.text);
    add_common(s, cfg);
    const std::string name = h.name;
    if (name == "disc-hedgehog") s->add_option("--sign", cfg.sign, "+1 or -1");
    if (name == "rect-1d") s->add_flag("--eps-ladder", cfg.eps_ladder, "eps, eps/2, eps/4 recovery energies");
    if (name == "crosstie-sweep") {
      s->add_option("--lmin", cfg.lmin);
      s->add_option("--lmax", cfg.lmax);
      s->add_option("--step", cfg.step);
    }
    if (name == "gradflow" || name == "energy-eval") {
      s->add_option("--domain", cfg.domain, "rect, disc or annulus");
      s->add_option("--bc", cfg.bc, "disc data: tangential, hedgehog or deg-minus-one");
    }
    if (name == "gradflow") {
      s->add_option("--dt", cfg.dt, "initial time step (0: eps/4)");
      s->add_option("--tol", cfg.tol, "stop when the residual drops below tol");
      s->add_option("--max-time", cfg.max_time);
      s->add_option("--max-steps", cfg.max_steps);
      s->add_option("--seed", cfg.seed, "random initial data seed");
      s->add_option("--init", cfg.init, "random, extension, crosstie or construction");
      s->add_option("--checkpoint-every", cfg.checkpoint_every, "accepted steps between snapshots");
      s->add_option("--eps-schedule", cfg.eps_schedule, "coarser eps values relaxed first, decreasing");
    }
    if (name == "energy-eval") s->add_option("--field", cfg.field, "CSV with header x,y,u1,u2")->required();
  }
  CLI::App* run = app.add_subcommand("run", "run a flat JSON config file");
  run->add_option("config", config_path)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == run) {
    try {
      std::ifstream f(config_path);
      cfg = nematic::config_from_json(nlohmann::json::parse(f));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  } else {
    cfg.subcommand = chosen->get_name();
  }
  return nematic::dispatch(cfg, std::cout);
}
