#pragma once

#include "nematic/core.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nematic {

struct RunConfig {
  std::string subcommand;
  Params params;
  int nx = 64;
  int ny = 64;
  std::string out = "out";
  double tol = 1e-5;
  double dt = 0.0;  // 0 selects eps / 4
  double max_time = 1e5;
  int max_steps = 100000;
  std::uint64_t seed = 1;
  std::string domain = "rect";
  std::string bc = "tangential";
  std::string init = "random";
  double lmin = 0.5;
  double lmax = 3.0;
  double step = 0.01;
  bool eps_ladder = false;
  int sign = 1;
  std::string field;  // nodal CSV for energy-eval
  int checkpoint_every = 0;
  std::vector<double> eps_schedule;  // gradflow: coarser eps stages run before eps
};

const std::vector<std::string>& subcommands();

nlohmann::ordered_json to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);

// Every violated range; empty when the config can run.
std::vector<std::string> validate(const RunConfig& c);

// Runs the subcommand and writes its artifacts under c.out. Returns the process exit status.
int dispatch(const RunConfig& c, std::ostream& log);

}  // namespace nematic
