#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "imcf/profile_ode.hpp"
#include "imcf/svg.hpp"
#include "imcf/verifier.hpp"

namespace imcf::cli {

/// Everything a command may read. Values start at the defaults below, are
/// overwritten by an optional JSON config file, then by command-line flags.
struct RunConfig {
  int n = 2, k = 1, m1 = 1, m2 = 1;
  StepControl ctl;

  // trace / classify
  double r0 = 0.0, psi0 = 0.0, v0 = 0.0;
  std::string direction = "forward";
  std::string from_trace;

  // sweep
  double r_min = -0.98, r_max = 0.98, psi_min = -5.0, psi_max = 5.0;
  std::size_t r_count = 21, psi_count = 21;
  unsigned threads = 0;
  bool seeds = false;

  // separatrix
  int side = 1;
  std::optional<double> r_probe;
  std::string trace_out;

  // portrait
  std::string pane = "psi";
  std::vector<std::string> traces;
  std::vector<std::string> ics;
  RenderOptions render;

  // verify
  double perturb = 0.0;

  std::string out = "-";
};

/// Reads flat keys named like the long flags with '-' replaced by '_'
/// ("rel_tol", "r_probe", ...). Unknown keys are rejected with ParseError.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Loads the file named by `--config` if present among argv.
void apply_config_file(RunConfig& cfg, int argc, const char* const* argv);

}  // namespace imcf::cli
