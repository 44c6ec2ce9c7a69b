#include "imcf/profile_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "imcf/error.hpp"
#include "rosenbrock.hpp"

namespace imcf {

using detail::Mat;
using detail::Vec;
using Vec3 = Vec<3>;
using Mat3 = Mat<3>;

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::EnterBand: return "EnterBand";
    case EventKind::ExitBand: return "ExitBand";
    case EventKind::ZeroCross: return "ZeroCross";
    case EventKind::EtaTouch: return "EtaTouch";
    case EventKind::BlowUp: return "BlowUp";
    case EventKind::BoundaryReached: return "BoundaryReached";
  }
  return "Unknown";
}

std::string_view to_string(LimitFlag flag) {
  switch (flag) {
    case LimitFlag::PlusInfinity: return "+inf";
    case LimitFlag::MinusInfinity: return "-inf";
    case LimitFlag::Zero: return "0";
    case LimitFlag::Finite: return "finite";
  }
  return "unknown";
}

std::string_view to_string(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::BlowUpMinus: return "BlowUpMinus";
    case TerminationKind::BlowUpPlus: return "BlowUpPlus";
    case TerminationKind::HitPlusOne: return "HitPlusOne";
    case TerminationKind::HitMinusOne: return "HitMinusOne";
    case TerminationKind::StepLimit: return "StepLimit";
  }
  return "Unknown";
}

void StepControl::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidControl, what); };
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail("tolerances must be positive");
  if (!(h_min > 0.0) || !(h_max > 0.0) || h_min > h_max) fail("need 0 < h_min <= h_max");
  if (!(max_turn > 0.0)) fail("max_turn must be positive");
  if (!(psi_cap >= 1e3)) fail("psi_cap must be >= 1e3");
  if (!(boundary_eps > 0.0) || boundary_eps >= 0.5) fail("boundary_eps must be in (0, 0.5)");
  if (max_steps == 0) fail("max_steps must be positive");
}

double psi_rhs(double r, double psi, const Parameters& p) {
  if (!(std::abs(r) < 1.0)) {
    throw Error(ErrorCode::DomainError, "psi_rhs needs |r| < 1, got " + std::to_string(r));
  }
  const double one_m = 1.0 - r * r;
  const double s = std::sqrt(one_m);
  const double k = p.k;
  return -(psi * psi + 1.0) * (s * psi * psi - (p.n - 1) * (r - p.R) * psi + s) / (k * one_m);
}

double vpp_rhs(double r, double Vp, const Parameters& p) {
  if (!(std::abs(r) < 1.0)) {
    throw Error(ErrorCode::DomainError, "vpp_rhs needs |r| < 1, got " + std::to_string(r));
  }
  const double one_m = 1.0 - r * r;
  const double k = p.k;
  const double nm1 = p.n - 1;
  const double v2 = Vp * Vp;
  return -k * k * one_m * v2 * v2 + k * nm1 * (r - p.R) * v2 * Vp - 2.0 * v2 +
         ((p.n + p.k - 1) * r - nm1 * p.R) / (k * one_m) * Vp - 1.0 / (k * k * one_m);
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
// Events are bracketed far below kEventRTol: close to r = a, b the nullclines
// have infinite slope and a 1e-10 error in r shows up as 1e-6 in eta.
constexpr double kLocalizeTol = 1e-14;
// Within this distance of +1 the solution can hug eta_2 (eta_1 near -1) to
// rounding level; crossings of that branch there are noise and are not
// recorded. Crossings of the other branch still are.
constexpr double kPoleTouchGap = 1e-6;

// The desingularized field over y = (theta, w, V).
struct Field {
  double k;
  double nm1;
  double R;

  Vec3 rhs(const Vec3& y) const {
    const double ct = std::cos(y[0]), st = std::sin(y[0]);
    const double cw = std::cos(y[1]), sw = std::sin(y[1]);
    return Vec3(k * ct * cw * cw, -ct + nm1 * (st - R) * sw * cw, ct * sw * cw);
  }

  Mat3 jacobian(const Vec3& y) const {
    const double ct = std::cos(y[0]), st = std::sin(y[0]);
    const double cw = std::cos(y[1]), sw = std::sin(y[1]);
    const double c2w = cw * cw - sw * sw;
    Mat3 j;
    j << -k * st * cw * cw, -2.0 * k * ct * cw * sw, 0.0,
        st + nm1 * ct * sw * cw, nm1 * (st - R) * c2w, 0.0,
        -st * sw * cw, ct * c2w, 0.0;
    return j;
  }
};

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

enum Slot : std::size_t { kBandA, kBandB, kZero, kEta, kCap, kBoundary, kSlots };

class Integrator {
 public:
  Integrator(const Parameters& p, const StepControl& ctl, Direction dir, bool carry_v)
      : p_(p),
        ctl_(ctl),
        dir_(static_cast<int>(dir)),
        carry_v_(carry_v),
        field_{static_cast<double>(p.k), static_cast<double>(p.n - 1), p.R},
        band_(band_bounds(p)),
        theta_eps_(std::asin(1.0 - ctl.boundary_eps)),
        w_cap_(std::atan(ctl.psi_cap)) {}

  Trace run(const ProfileState& ic) {
    Trace trace;
    trace.direction = dir_ > 0 ? Direction::Forward : Direction::Backward;
    trace.carries_profile = carry_v_;

    Vec3 y(std::asin(ic.r), std::atan(ic.psi), ic.V.value_or(0.0));
    std::array<int, kSlots> prev{};
    for (std::size_t i = 0; i < kSlots; ++i) prev[i] = sign_of(g(i, y));
    push_sample(trace, y);

    double h = dir_ * std::min(ctl_.h_max, 1e-2);
    for (std::size_t steps = 0;; ++steps) {
      if (steps >= ctl_.max_steps) {
        trace.termination = Termination{TerminationKind::StepLimit, std::sin(y[0]), LimitFlag::Finite};
        return trace;
      }
      auto [y_new, err_norm] = attempt(y, h);
      double next_h = h * growth(err_norm);

      // Earliest sign change among the event functions over this step.
      double best_h = 0.0;
      Vec3 best_y = y_new;
      bool truncated = false;
      for (std::size_t i = 0; i < kSlots; ++i) {
        if (!crossed(prev[i], g(i, y_new))) continue;
        auto [h_hi, y_hi] = localize(i, prev[i], y, h, y_new);
        if (!truncated || std::abs(h_hi) < std::abs(best_h)) {
          best_h = h_hi;
          best_y = y_hi;
          truncated = true;
        }
      }
      if (truncated) {
        y_new = best_y;
        next_h = h;
      }

      y = y_new;
      h = dir_ * std::clamp(std::abs(next_h), ctl_.h_min, ctl_.h_max);

      bool blow_up = false;
      bool boundary = false;
      for (std::size_t i = 0; i < kSlots; ++i) {
        const double gi = g(i, y);
        if (!crossed(prev[i], gi)) continue;
        prev[i] = sign_of(gi);
        if (i == kCap) {
          blow_up = true;
        } else if (i == kBoundary) {
          boundary = true;
        } else if (const Event e = make_event(i, y); !slow_manifold_noise(e)) {
          trace.events.push_back(e);
        }
      }
      for (std::size_t i = 0; i < kSlots; ++i) {
        if (prev[i] == 0) prev[i] = sign_of(g(i, y));
      }
      push_sample(trace, y);

      if (blow_up) {
        finish_blow_up(trace, y);
        return trace;
      }
      if (boundary) {
        finish_boundary(trace, y);
        return trace;
      }
    }
  }

 private:
  struct Attempt {
    Vec3 y;
    double err_norm;
  };

  static bool crossed(int prev, double g_new) {
    const int s = sign_of(g_new);
    return prev != 0 && s != 0 && s != prev;
  }

  double g(std::size_t slot, const Vec3& y) const {
    const double st = std::sin(y[0]);
    switch (slot) {
      case kBandA: return st - band_.a;
      case kBandB: return st - band_.b;
      case kZero: return y[1];
      case kEta: {
        // -dw/ds; vanishes exactly where psi = eta_1 or eta_2.
        const double ct = std::cos(y[0]);
        return ct - field_.nm1 * (st - field_.R) * std::sin(y[1]) * std::cos(y[1]);
      }
      case kCap: return w_cap_ - std::abs(y[1]);
      case kBoundary: return theta_eps_ - dir_ * y[0];
      default: return 1.0;
    }
  }

  double error_norm(const Vec3& y0, const Vec3& y1, const Vec3& err) const {
    const int dims = carry_v_ ? 3 : 2;
    double e = 0.0;
    for (int i = 0; i < dims; ++i) {
      const double sc = ctl_.abs_tol + ctl_.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      e = std::max(e, std::abs(err[i]) / sc);
    }
    return e;
  }

  static double growth(double err_norm) {
    if (err_norm <= 0.0) return 5.0;
    return std::clamp(0.9 * std::pow(err_norm, -0.25), 0.2, 5.0);
  }

  bool admissible(const Vec3& y0, const Vec3& y1) const {
    if (!y1.allFinite() || std::abs(y1[0]) >= kHalfPi) return false;
    const double dt = y1[0] - y0[0], dw = y1[1] - y0[1];
    return std::hypot(dt, dw) <= ctl_.max_turn;
  }

  // Retries with shrinking h until the step is accepted; h is updated.
  Attempt attempt(const Vec3& y, double& h) const {
    for (;;) {
      if (std::abs(h) < ctl_.h_min) {
        throw Error(ErrorCode::IllConditioned,
                    "step collapsed below h_min at r = " + std::to_string(std::sin(y[0])));
      }
      const auto res = detail::rosenbrock_step<3>(field_, y, h);
      if (!admissible(y, res.y)) {
        h *= 0.25;
        continue;
      }
      const double e = error_norm(y, res.y, res.err);
      if (e > 1.0) {
        h *= std::max(0.2, 0.9 * std::pow(e, -0.25));
        continue;
      }
      return Attempt{res.y, e};
    }
  }

  // Bisection on the step length until the bracket is tight in r and w.
  std::pair<double, Vec3> localize(std::size_t slot, int prev_sign, const Vec3& y0, double h,
                                   const Vec3& y_end) const {
    double lo = 0.0, hi = h;
    Vec3 y_lo = y0, y_hi = y_end;
    for (int it = 0; it < 200; ++it) {
      const double dr = std::abs(std::sin(y_hi[0]) - std::sin(y_lo[0]));
      const double dw = std::abs(y_hi[1] - y_lo[1]);
      if (dr <= kLocalizeTol && dw <= kLocalizeTol) break;
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const Vec3 y_mid = detail::rosenbrock_step<3>(field_, y0, mid).y;
      // hi only ever moves to a strictly opposite sign, so the step ends past
      // the crossing even when the bracket collapses onto g = 0.
      if (sign_of(g(slot, y_mid)) != -prev_sign) {
        lo = mid;
        y_lo = y_mid;
      } else {
        hi = mid;
        y_hi = y_mid;
      }
    }
    return {hi, y_hi};
  }

  ProfileState state_of(const Vec3& y) const {
    ProfileState s;
    s.r = std::sin(y[0]);
    s.psi = std::tan(y[1]);
    if (carry_v_) {
      s.V = y[2];
      s.Vp = s.psi / (p_.k * std::cos(y[0]));
    }
    return s;
  }

  void push_sample(Trace& trace, const Vec3& y) const {
    ProfileState s = state_of(y);
    if (trace.samples.empty()) {
      trace.samples.push_back(s);
      return;
    }
    const double last = trace.samples.back().r;
    if (dir_ * (s.r - last) > 0.0) {
      trace.samples.push_back(s);
    } else if (s.r == last) {
      trace.samples.back() = s;
    }
  }

  Event make_event(std::size_t slot, const Vec3& y) const {
    Event e;
    const ProfileState s = state_of(y);
    e.r_at = s.r;
    e.psi_at = s.psi;
    switch (slot) {
      case kBandA:
      case kBandB: e.kind = band_.contains_open(s.r) ? EventKind::EnterBand : EventKind::ExitBand; break;
      case kZero: e.kind = EventKind::ZeroCross; break;
      case kEta:
        e.kind = EventKind::EtaTouch;
        e.branch = s.psi < eta_midpoint(s.r, p_) ? Branch::Eta1 : Branch::Eta2;
        break;
      default: break;
    }
    return e;
  }

  bool slow_manifold_noise(const Event& e) const {
    if (e.kind != EventKind::EtaTouch || 1.0 - std::abs(e.r_at) >= kPoleTouchGap) return false;
    return e.branch == (e.r_at > 0.0 ? Branch::Eta2 : Branch::Eta1);
  }

  // Past the cap, continue to the crossing of w = -+pi/2: the blow-up abscissa.
  void finish_blow_up(Trace& trace, const Vec3& y_cap) const {
    const int sgn = y_cap[1] > 0.0 ? 1 : -1;
    auto gap = [&](const Vec3& y) { return kHalfPi - sgn * y[1]; };
    const Vec3 f = field_.rhs(y_cap);
    const double speed = std::max(std::abs(f[1]), 1e-300);
    double h = dir_ * 2.0 * gap(y_cap) / speed;
    Vec3 y_end = detail::rosenbrock_step<3>(field_, y_cap, h).y;
    for (int it = 0; it < 64 && gap(y_end) > 0.0; ++it) {
      h *= 2.0;
      y_end = detail::rosenbrock_step<3>(field_, y_cap, h).y;
    }
    double lo = 0.0, hi = h;
    Vec3 y_hi = y_end;
    for (int it = 0; it < 200 && std::abs(hi - lo) > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const Vec3 y_mid = detail::rosenbrock_step<3>(field_, y_cap, mid).y;
      if (gap(y_mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
        y_hi = y_mid;
        if (std::abs(gap(y_mid)) <= kEventRTol) break;
      }
    }
    const double r1 = std::sin(y_hi[0]);
    Event e;
    e.kind = EventKind::BlowUp;
    e.r_at = r1;
    e.sign = sgn;
    trace.events.push_back(e);
    trace.termination = Termination{sgn < 0 ? TerminationKind::BlowUpMinus : TerminationKind::BlowUpPlus,
                                    r1, sgn < 0 ? LimitFlag::MinusInfinity : LimitFlag::PlusInfinity};
  }

  void finish_boundary(Trace& trace, const Vec3& y) const {
    const ProfileState s = state_of(y);
    Event e;
    e.kind = EventKind::BoundaryReached;
    e.r_at = s.r;
    e.psi_at = s.psi;
    e.sign = dir_;
    trace.events.push_back(e);
    trace.termination = Termination{dir_ > 0 ? TerminationKind::HitPlusOne : TerminationKind::HitMinusOne,
                                    s.r, boundary_limit_flag(trace.samples)};
  }

  Parameters p_;
  StepControl ctl_;
  int dir_;
  bool carry_v_;
  Field field_;
  Band band_;
  double theta_eps_;
  double w_cap_;
};

Trace run_integration(const ProfileState& ic, Direction direction, const Parameters& p,
                      const StepControl& ctl, bool carry_v) {
  ctl.validate();
  if (!(std::abs(ic.r) < 1.0 - ctl.boundary_eps)) {
    throw Error(ErrorCode::DomainError,
                "initial abscissa must lie in (-1 + eps, 1 - eps), got " + std::to_string(ic.r));
  }
  if (!std::isfinite(ic.psi) || std::abs(ic.psi) >= ctl.psi_cap) {
    throw Error(ErrorCode::DomainError, "initial psi must be finite and below psi_cap");
  }
  return Integrator(p, ctl, direction, carry_v).run(ic);
}

}  // namespace

Trace integrate_psi(const ProfileState& ic, Direction direction, const Parameters& p,
                    const StepControl& ctl) {
  return run_integration(ic, direction, p, ctl, false);
}

Trace integrate_profile(const ProfileState& ic, Direction direction, const Parameters& p,
                        const StepControl& ctl) {
  return run_integration(ic, direction, p, ctl, true);
}

std::optional<double> boundary_log_slope(const std::vector<ProfileState>& samples) {
  if (samples.size() < 2) return std::nullopt;
  const double d_end = 1.0 - std::abs(samples.back().r);
  // Least-squares slope of log|psi| against log(1 - |r|) over the last decade.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    const double d = 1.0 - std::abs(it->r);
    if (d > 10.0 * d_end) break;
    if (it->psi == 0.0 || d <= 0.0) continue;
    const double x = std::log(d), yv = std::log(std::abs(it->psi));
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = count * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) return std::nullopt;
  return (count * sxy - sx * sy) / denom;
}

LimitFlag boundary_limit_flag(const std::vector<ProfileState>& samples) {
  const std::optional<double> slope = boundary_log_slope(samples);
  if (!slope) return LimitFlag::Finite;
  const ProfileState& last = samples.back();
  const double psi_end = std::abs(last.psi);
  if (*slope >= kZeroLimitMinSlope && psi_end <= kZeroLimitPsiMax) return LimitFlag::Zero;
  if (*slope <= kDivergentMaxSlope && psi_end >= kDivergentPsiMin) {
    return last.psi > 0.0 ? LimitFlag::PlusInfinity : LimitFlag::MinusInfinity;
  }
  return LimitFlag::Finite;
}

}  // namespace imcf
