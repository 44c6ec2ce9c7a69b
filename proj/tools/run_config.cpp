#include "run_config.hpp"

#include <cstring>
#include <fstream>
#include <set>

#include "imcf/error.hpp"

namespace imcf::cli {

namespace {

template <class T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

template <class T>
void take_opt(const nlohmann::json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  static const std::set<std::string> known{
      "n", "k", "m1", "m2", "rel_tol", "abs_tol", "h_min", "h_max", "max_turn", "psi_cap",
      "boundary_eps", "max_steps", "r0", "psi0", "v0", "direction", "from_trace", "r_min",
      "r_max", "psi_min", "psi_max", "r_count", "psi_count", "threads", "seeds", "side",
      "r_probe", "trace_out", "pane", "trace", "ic", "width", "height", "margin", "stride",
      "lo", "hi", "perturb", "out"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
  try {
    take(j, "n", cfg.n);
    take(j, "k", cfg.k);
    take(j, "m1", cfg.m1);
    take(j, "m2", cfg.m2);
    take(j, "rel_tol", cfg.ctl.rel_tol);
    take(j, "abs_tol", cfg.ctl.abs_tol);
    take(j, "h_min", cfg.ctl.h_min);
    take(j, "h_max", cfg.ctl.h_max);
    take(j, "max_turn", cfg.ctl.max_turn);
    take(j, "psi_cap", cfg.ctl.psi_cap);
    take(j, "boundary_eps", cfg.ctl.boundary_eps);
    take(j, "max_steps", cfg.ctl.max_steps);
    take(j, "r0", cfg.r0);
    take(j, "psi0", cfg.psi0);
    take(j, "v0", cfg.v0);
    take(j, "direction", cfg.direction);
    take(j, "from_trace", cfg.from_trace);
    take(j, "r_min", cfg.r_min);
    take(j, "r_max", cfg.r_max);
    take(j, "psi_min", cfg.psi_min);
    take(j, "psi_max", cfg.psi_max);
    take(j, "r_count", cfg.r_count);
    take(j, "psi_count", cfg.psi_count);
    take(j, "threads", cfg.threads);
    take(j, "seeds", cfg.seeds);
    take(j, "side", cfg.side);
    take_opt(j, "r_probe", cfg.r_probe);
    take(j, "trace_out", cfg.trace_out);
    take(j, "pane", cfg.pane);
    take(j, "trace", cfg.traces);
    take(j, "ic", cfg.ics);
    take(j, "width", cfg.render.width);
    take(j, "height", cfg.render.height);
    take(j, "margin", cfg.render.margin);
    take(j, "stride", cfg.render.stride);
    take_opt(j, "lo", cfg.render.lo);
    take_opt(j, "hi", cfg.render.hi);
    take(j, "perturb", cfg.perturb);
    take(j, "out", cfg.out);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
}

void apply_config_file(RunConfig& cfg, int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    std::string path;
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
      path = argv[i + 1];
    } else if (std::strncmp(argv[i], "--config=", 9) == 0) {
      path = argv[i] + 9;
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open config '" + path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, "config '" + path + "': " + e.what());
    }
    apply_json(cfg, j);
    return;
  }
}

}  // namespace imcf::cli
