#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "imcf/classifier.hpp"
#include "imcf/error.hpp"
#include "imcf/resample.hpp"
#include "imcf/svg.hpp"
#include "imcf/trace_io.hpp"
#include "imcf/verifier.hpp"
#include "report.hpp"
#include "run_config.hpp"

namespace imcf::cli {

namespace {

// Tolerances of the verify suite.
constexpr double kReductionTol = 1e-6;
constexpr double kPdeTol = 1e-5;
constexpr double kBetaTol = 1e-10;
constexpr double kCriticalTol = 1e-5;

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadK:
    case ErrorCode::UnequalMultiplicities:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ROutOfRange:
    case ErrorCode::DomainError:
    case ErrorCode::BandInterior:
    case ErrorCode::InvalidControl:
    case ErrorCode::HypothesisUnmet:
    case ErrorCode::WrongK:
    case ErrorCode::FocalProximity:
    case ErrorCode::ParseError: return true;
    default: return false;
  }
}

struct Context {
  RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;

  Parameters params() const { return validate_parameters(cfg.n, cfg.k, cfg.m1, cfg.m2); }

  void emit(const std::string& text) const {
    if (cfg.out.empty() || cfg.out == "-") {
      out << text;
      return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.out + "'");
    f << text;
  }
};

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open trace '" + path + "'");
  return read_trace_csv(in);
}

ProfileState parse_ic(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "ic must be 'r,psi': " + s);
  try {
    return ProfileState{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)), 0.0, {}};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "ic must be 'r,psi': " + s);
  }
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss << std::setprecision(9) << x;
  return ss.str();
}

// ---------------------------------------------------------------------------

int cmd_params(const Context& c) {
  const RunConfig& cfg = c.cfg;
  std::ostringstream s;
  s << "n = " << cfg.n << ", k = " << cfg.k << ", m1 = " << cfg.m1 << ", m2 = " << cfg.m2 << '\n';
  try {
    const Parameters p = c.params();
    const Band band = band_bounds(p);
    s << "R = " << fmt(p.R) << '\n' << "a = " << fmt(band.a) << '\n' << "b = " << fmt(band.b) << '\n'
      << "admissible: yes\n";
    c.emit(s.str());
    return kExitOk;
  } catch (const Error& e) {
    s << "admissible: no (" << e.what() << ")\n";
    c.emit(s.str());
    return kExitInvalid;
  }
}

Direction parse_direction(const std::string& d) {
  if (d == "forward" || d == "fwd") return Direction::Forward;
  if (d == "back" || d == "backward") return Direction::Backward;
  throw Error(ErrorCode::ParseError, "direction must be forward or back");
}

int cmd_trace(const Context& c) {
  const Parameters p = c.params();
  const Trace t = integrate_profile(ProfileState{c.cfg.r0, c.cfg.psi0, c.cfg.v0, {}},
                                    parse_direction(c.cfg.direction), p, c.cfg.ctl);
  std::ostringstream s;
  write_trace_csv(s, t);
  c.emit(s.str());
  return t.termination.kind == TerminationKind::StepLimit ? kExitFailure : kExitOk;
}

int cmd_classify(const Context& c) {
  const Parameters p = c.params();
  ProfileState ic{c.cfg.r0, c.cfg.psi0, {}, {}};
  if (!c.cfg.from_trace.empty()) {
    // A trace file pins its first sample; both halves are re-integrated from it.
    const Trace t = load_trace(c.cfg.from_trace);
    if (t.samples.empty()) throw Error(ErrorCode::ParseError, "trace has no samples");
    ic = ProfileState{t.samples.front().r, t.samples.front().psi, {}, {}};
  }
  const Classification cl = classify(ic, p, c.cfg.ctl);
  Json j = classification_json(cl, p);
  j["ic"] = Json{{"r", ic.r}, {"psi", ic.psi}};
  c.emit(j.dump(2) + "\n");
  return kExitOk;
}

std::vector<ProfileState> seed_ics(const Parameters& p, const StepControl& ctl) {
  const Band band = band_bounds(p);
  const double rb = 0.5 * (band.b + 1.0), ra = 0.5 * (band.a - 1.0);
  const EtaPair eb = eta_pair(rb, p), ea = eta_pair(ra, p);
  return {ProfileState{0.5 * (band.a + band.b), 0.0, {}, {}},
          ProfileState{rb, 0.5 * (eb.eta1 + eb.eta2), {}, {}},
          ProfileState{ra, 0.5 * (ea.eta1 + ea.eta2), {}, {}},
          find_separatrix(p, 1, default_probe(p, 1), ctl).ic,
          find_separatrix(p, -1, default_probe(p, -1), ctl).ic};
}

int cmd_sweep(const Context& c) {
  const RunConfig& cfg = c.cfg;
  const Parameters p = c.params();
  std::vector<SweepCell> cells;
  if (cfg.seeds) {
    const std::vector<ProfileState> seeds = seed_ics(p, cfg.ctl);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      cells.push_back(SweepCell{i, 0, seeds[i], classify(seeds[i], p, cfg.ctl)});
    }
  } else {
    if (cfg.r_count == 0 || cfg.psi_count == 0) throw Error(ErrorCode::ParseError, "grid counts must be positive");
    if (!(cfg.r_min > -1.0 && cfg.r_max < 1.0 && cfg.r_min <= cfg.r_max)) {
      throw Error(ErrorCode::DomainError, "r grid must lie inside (-1, 1)");
    }
    cells = sweep(p, uniform_grid(cfg.r_min, cfg.r_max, cfg.r_count),
                  uniform_grid(cfg.psi_min, cfg.psi_max, cfg.psi_count), cfg.ctl, cfg.threads);
  }
  Json arr = Json::array();
  std::map<std::string, std::size_t> counts{{"I", 0}, {"II", 0}, {"III", 0}, {"IV", 0}, {"V", 0}};
  for (const SweepCell& cell : cells) {
    Json j;
    j["i"] = cell.i;
    j["j"] = cell.j;
    j["r"] = cell.ic.r;
    j["psi"] = cell.ic.psi;
    const Json cj = classification_json(cell.c, p);
    for (const auto& [key, value] : cj.items()) j[key] = value;
    ++counts[std::string(imcf::to_string(cell.c.profile_type))];
    arr.push_back(std::move(j));
  }
  Json doc;
  doc["parameters"] = Json{{"n", p.n}, {"k", p.k}, {"m1", p.m1}, {"m2", p.m2}};
  Json totals;
  for (const auto& [key, value] : counts) totals[key] = value;
  doc["counts"] = totals;
  doc["cells"] = std::move(arr);
  c.emit(doc.dump(1) + "\n");
  return kExitOk;
}

int cmd_separatrix(const Context& c) {
  const RunConfig& cfg = c.cfg;
  const Parameters p = c.params();
  if (cfg.side != 1 && cfg.side != -1) throw Error(ErrorCode::ParseError, "side must be 1 or -1");
  const double r_probe = cfg.r_probe.value_or(default_probe(p, cfg.side));
  const SeparatrixResult res = find_separatrix(p, cfg.side, r_probe, cfg.ctl);
  Json j;
  j["side"] = cfg.side;
  j["r_probe"] = res.ic.r;
  j["psi0"] = res.ic.psi;
  j["bracket_lo"] = res.bracket_lo;
  j["bracket_hi"] = res.bracket_hi;
  j["iterations"] = res.history.size();
  if (cfg.trace_out.empty()) {
    j["trace_path"] = nullptr;
  } else {
    const Trace t = integrate_profile(res.ic, cfg.side > 0 ? Direction::Forward : Direction::Backward, p, cfg.ctl);
    std::ofstream f(cfg.trace_out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.trace_out + "'");
    write_trace_csv(f, t);
    j["trace_path"] = cfg.trace_out;
  }
  c.emit(j.dump(2) + "\n");
  return kExitOk;
}

int cmd_portrait(const Context& c) {
  const RunConfig& cfg = c.cfg;
  const Parameters p = c.params();
  std::vector<Trace> traces;
  for (const std::string& path : cfg.traces) traces.push_back(load_trace(path));
  for (const std::string& s : cfg.ics) {
    const Profile prof = integrate_both(parse_ic(s), p, cfg.ctl, true);
    traces.push_back(prof.backward);
    traces.push_back(prof.forward);
  }
  c.emit(render_portrait(p, traces, pane_from_string(cfg.pane), cfg.render));
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

int cmd_verify(const Context& c) {
  const RunConfig& cfg = c.cfg;
  const Parameters p = c.params();
  ResidualOptions opt;
  opt.perturb = cfg.perturb;

  std::vector<ProfileState> ics;
  const Band band = band_bounds(p);
  const double rb = 0.5 * (band.b + 1.0), ra = 0.5 * (band.a - 1.0);
  const EtaPair eb = eta_pair(rb, p), ea = eta_pair(ra, p);
  ics.push_back(ProfileState{0.0, 0.0, 0.0, {}});
  ics.push_back(ProfileState{rb, 0.5 * (eb.eta1 + eb.eta2), 0.0, {}});
  ics.push_back(ProfileState{ra, 0.5 * (ea.eta1 + ea.eta2), 0.0, {}});

  std::vector<Trace> traces;
  for (const ProfileState& ic : ics) {
    Profile prof = integrate_both(ic, p, cfg.ctl, true);
    traces.push_back(std::move(prof.backward));
    traces.push_back(std::move(prof.forward));
  }

  std::vector<Check> checks;
  std::vector<std::string> skipped;
  auto worst = [&](const std::function<ResidualReport(const Trace&)>& f) {
    ResidualReport w;
    for (const Trace& t : traces) {
      const ResidualReport r = f(t);
      if (r.max_rel >= w.max_rel) w = r;
    }
    return w;
  };

  {
    const ResidualReport r = worst([&](const Trace& t) { return reduction_residual(t, p, opt); });
    checks.push_back({"reduction_residual", r.max_rel <= kReductionTol,
                      "max_rel=" + fmt(r.max_rel) + " at r=" + fmt(r.argmax_r) + " (tol " + fmt(kReductionTol) + ")"});
  }
  if (p.k == 1) {
    const ResidualReport r = worst([&](const Trace& t) { return pde_residual_k1(t, p, opt); });
    checks.push_back({"pde_residual_k1", r.max_rel <= kPdeTol,
                      "max_rel=" + fmt(r.max_rel) + " at r=" + fmt(r.argmax_r) + " (tol " + fmt(kPdeTol) + ")"});
  } else {
    skipped.push_back("pde_residual_k1 (needs k = 1, got k = " + std::to_string(p.k) + ")");
  }
  {
    const double period = std::numbers::pi / p.k;
    const std::vector<double> s = uniform_grid(0.01 * period, 0.99 * period, 199);
    const ResidualReport r = munzner_beta_oracle(p, s);
    checks.push_back({"munzner_beta_oracle", r.max_abs <= kBetaTol,
                      "max_abs=" + fmt(r.max_abs) + " (tol " + fmt(kBetaTol) + ")"});
  }
  {
    ResidualReport w;
    bool any = false, signs = true;
    for (const Trace& t : traces) {
      try {
        const ResidualReport r = critical_point_check(t, p);
        any = true;
        signs = signs && r.sign_agreement;
        if (r.max_rel >= w.max_rel) w = r;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCriticalPoint) throw;
      }
    }
    if (any) {
      checks.push_back({"critical_point_check", w.max_rel <= kCriticalTol && signs,
                        "max_rel=" + fmt(w.max_rel) + " sign_agreement=" + (signs ? "yes" : "no") +
                            " (tol " + fmt(kCriticalTol) + ")"});
    } else {
      skipped.push_back("critical_point_check (no EtaTouch event)");
    }
  }

  std::ostringstream s;
  bool ok = true;
  for (const Check& ch : checks) {
    s << (ch.pass ? "PASS " : "FAIL ") << ch.name << ' ' << ch.detail << '\n';
    ok = ok && ch.pass;
  }
  for (const std::string& sk : skipped) s << "SKIPPED " << sk << '\n';
  c.emit(s.str());
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
  sub->add_option("--config", config_path, "JSON config file; flags take precedence");
  sub->add_option("--n", cfg.n, "Sphere dimension n (S^n)")->capture_default_str();
  sub->add_option("--k", cfg.k, "Number of distinct principal curvatures")->capture_default_str();
  sub->add_option("--m1", cfg.m1, "First multiplicity")->capture_default_str();
  sub->add_option("--m2", cfg.m2, "Second multiplicity")->capture_default_str();
  sub->add_option("--out", cfg.out, "Output path ('-' for stdout)")->capture_default_str();
}

void add_control(CLI::App* sub, RunConfig& cfg) {
  StepControl& ctl = cfg.ctl;
  sub->add_option("--rel-tol", ctl.rel_tol, "Relative step tolerance")->capture_default_str();
  sub->add_option("--abs-tol", ctl.abs_tol, "Absolute step tolerance")->capture_default_str();
  sub->add_option("--h-min", ctl.h_min, "Smallest step before IllConditioned")->capture_default_str();
  sub->add_option("--h-max", ctl.h_max, "Largest step")->capture_default_str();
  sub->add_option("--max-turn", ctl.max_turn, "Largest angle change per step")->capture_default_str();
  sub->add_option("--psi-cap", ctl.psi_cap, "|psi| treated as a blow-up")->capture_default_str();
  sub->add_option("--boundary-eps", ctl.boundary_eps, "Stop at 1 - |r| <= eps")->capture_default_str();
  sub->add_option("--max-steps", ctl.max_steps, "Step budget per half-trace")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    apply_config_file(cfg, argc, argv);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::string config_path;
  CLI::App app{"Translating-soliton profiles of inverse mean curvature flow on isoparametric spheres"};
  app.require_subcommand(1);

  auto* params = app.add_subcommand("params", "Check (n, k, m1, m2) and print R and the band (a, b)");
  add_common(params, cfg, config_path);

  auto* trace = app.add_subcommand("trace", "Integrate one half of a profile and write CSV");
  add_common(trace, cfg, config_path);
  add_control(trace, cfg);
  trace->add_option("--r0", cfg.r0, "Initial abscissa")->capture_default_str();
  trace->add_option("--psi0", cfg.psi0, "Initial psi")->capture_default_str();
  trace->add_option("--v0", cfg.v0, "Initial V")->capture_default_str();
  trace->add_option("--direction", cfg.direction, "forward or back")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Classify the maximal solution through an IC");
  add_common(classify_cmd, cfg, config_path);
  add_control(classify_cmd, cfg);
  classify_cmd->add_option("--r0", cfg.r0, "Initial abscissa")->capture_default_str();
  classify_cmd->add_option("--psi0", cfg.psi0, "Initial psi")->capture_default_str();
  classify_cmd->add_option("--from-trace", cfg.from_trace, "Take the IC from a trace CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "Classify a grid of ICs");
  add_common(sweep_cmd, cfg, config_path);
  add_control(sweep_cmd, cfg);
  sweep_cmd->add_option("--r-min", cfg.r_min)->capture_default_str();
  sweep_cmd->add_option("--r-max", cfg.r_max)->capture_default_str();
  sweep_cmd->add_option("--r-count", cfg.r_count)->capture_default_str();
  sweep_cmd->add_option("--psi-min", cfg.psi_min)->capture_default_str();
  sweep_cmd->add_option("--psi-max", cfg.psi_max)->capture_default_str();
  sweep_cmd->add_option("--psi-count", cfg.psi_count)->capture_default_str();
  sweep_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sweep_cmd->add_flag("--seeds", cfg.seeds, "Classify one seed IC per profile type instead of a grid");

  auto* sep = app.add_subcommand("separatrix", "Shoot for the Type IV (side 1) or Type V (side -1) IC");
  add_common(sep, cfg, config_path);
  add_control(sep, cfg);
  sep->add_option("--side", cfg.side, "1 or -1")->capture_default_str();
  sep->add_option("--r-probe", cfg.r_probe, "Probe abscissa (default: middle of (b,1) or (-1,a))");
  sep->add_option("--trace-out", cfg.trace_out, "Also write the separatrix half-trace as CSV");

  auto* portrait = app.add_subcommand("portrait", "Render traces as an SVG phase portrait");
  add_common(portrait, cfg, config_path);
  add_control(portrait, cfg);
  portrait->add_option("--pane", cfg.pane, "psi, vprime, v or eta")->capture_default_str();
  portrait->add_option("--trace", cfg.traces, "Trace CSV (repeatable)");
  portrait->add_option("--ic", cfg.ics, "IC 'r,psi' integrated both ways (repeatable)");
  portrait->add_option("--width", cfg.render.width)->capture_default_str();
  portrait->add_option("--height", cfg.render.height)->capture_default_str();
  portrait->add_option("--margin", cfg.render.margin)->capture_default_str();
  portrait->add_option("--stride", cfg.render.stride)->capture_default_str();
  portrait->add_option("--lo", cfg.render.lo, "Lower end of the vertical range");
  portrait->add_option("--hi", cfg.render.hi, "Upper end of the vertical range");

  auto* verify = app.add_subcommand("verify", "Run the residual oracles; exit 0 iff all pass");
  add_common(verify, cfg, config_path);
  add_control(verify, cfg);
  verify->add_option("--perturb", cfg.perturb, "Scale V' and V by 1 + eps before checking")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const Context ctx{cfg, out, err};
  try {
    if (*params) return cmd_params(ctx);
    cfg.ctl.validate();
    if (*trace) return cmd_trace(ctx);
    if (*classify_cmd) return cmd_classify(ctx);
    if (*sweep_cmd) return cmd_sweep(ctx);
    if (*sep) return cmd_separatrix(ctx);
    if (*portrait) return cmd_portrait(ctx);
    if (*verify) return cmd_verify(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInvalid : kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace imcf::cli
