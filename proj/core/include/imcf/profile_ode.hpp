#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "imcf/geometry.hpp"

namespace imcf {

/// A point on a profile curve. V and Vp are carried only by traces built with
/// integrate_profile(); then psi = k sqrt(1 - r^2) Vp.
struct ProfileState {
  double r = 0.0;
  double psi = 0.0;
  std::optional<double> V;
  std::optional<double> Vp;
};

/// Integrator controls. Steps are taken in the desingularized flow time s
/// (see integrate_psi), so h_min/h_max are bounds on |ds|; max_turn bounds the
/// per-step change of the angles (theta, arctan psi) and sets sample density.
struct StepControl {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double h_min = 1e-14;
  double h_max = 1e12;
  double max_turn = 0.02;
  double psi_cap = 1e8;
  double boundary_eps = 1e-9;
  std::size_t max_steps = 2'000'000;

  /// Throws InvalidControl when an invariant is violated.
  void validate() const;
};

enum class Direction : int { Forward = 1, Backward = -1 };

enum class EventKind {
  EnterBand,        ///< r enters (a, b)
  ExitBand,         ///< r leaves (a, b)
  ZeroCross,        ///< psi changes sign
  EtaTouch,         ///< psi crosses eta_branch, i.e. psi' = 0 (eta_2 near +1 and eta_1 near -1 are skipped within 1e-6 of the pole)
  BlowUp,           ///< |psi| -> infinity at an interior abscissa (terminal)
  BoundaryReached,  ///< 1 - |r| <= boundary_eps (terminal)
};

std::string_view to_string(EventKind kind);

struct Event {
  EventKind kind = EventKind::ZeroCross;
  double r_at = 0.0;
  /// NaN for BlowUp.
  double psi_at = std::numeric_limits<double>::quiet_NaN();
  /// EtaTouch: which nullcline was crossed.
  Branch branch = Branch::Eta1;
  /// BlowUp: sign of the limit of psi. BoundaryReached: side (+1 or -1).
  int sign = 0;
};

enum class LimitFlag { PlusInfinity, MinusInfinity, Zero, Finite };

std::string_view to_string(LimitFlag flag);

enum class TerminationKind { BlowUpMinus, BlowUpPlus, HitPlusOne, HitMinusOne, StepLimit };

std::string_view to_string(TerminationKind kind);

struct Termination {
  TerminationKind kind = TerminationKind::StepLimit;
  /// Blow-up abscissa r1, or the last abscissa reached.
  double r = 0.0;
  /// Classification of psi at the pole; meaningful for HitPlusOne/HitMinusOne.
  LimitFlag limit = LimitFlag::Finite;
};

struct Trace {
  std::vector<ProfileState> samples;  ///< strictly monotone in r, in integration order
  std::vector<Event> events;          ///< integration order; last one is terminal
  Termination termination;
  Direction direction = Direction::Forward;
  bool carries_profile = false;
};

/// psi'(r) of the phase equation.
double psi_rhs(double r, double psi, const Parameters& p);

/// V''(r) of the profile equation as a polynomial in V'.
double vpp_rhs(double r, double Vp, const Parameters& p);

/// Integrates the phase equation from ic in the requested direction.
///
/// With r = sin(theta) and psi = tan(w), the phase equation times
/// k cos(theta) cos(w)^2 becomes the bounded autonomous field
///
///   dtheta/ds = k cos(theta) cos(w)^2
///   dw/ds     = -cos(theta) + (n-1)(sin(theta) - R) sin(w) cos(w)
///   dV/ds     = cos(theta) sin(w) cos(w)
///
/// which is smooth on the closed square |theta|, |w| <= pi/2. A blow-up of
/// psi is a transversal crossing of w = -+pi/2 and the poles r = +-1 are
/// invariant lines. Near the poles the nullcline eta_2 (eta_1 at r -> -1) is a
/// strongly attracting slow manifold, so the stepper is the linearly implicit
/// Rosenbrock 4(3) pair of Shampine.
///
/// Throws DomainError when ic.r is not inside (-1 + eps, 1 - eps) or |psi|
/// exceeds the cap, IllConditioned when the step collapses below h_min.
/// Exceeding max_steps yields a trace with StepLimit termination.
Trace integrate_psi(const ProfileState& ic, Direction direction, const Parameters& p,
                    const StepControl& ctl);

/// Same as integrate_psi but also carries V (from ic.V, default 0) and V'.
Trace integrate_profile(const ProfileState& ic, Direction direction, const Parameters& p,
                        const StepControl& ctl);

/// Least-squares slope of log|psi| against log(1 - |r|) over the samples of
/// the last decade of 1 - |r|; nullopt with fewer than two usable samples.
std::optional<double> boundary_log_slope(const std::vector<ProfileState>& samples);

/// Log-slope test on the samples of the last decade of 1 - |r|.
LimitFlag boundary_limit_flag(const std::vector<ProfileState>& samples);

/// Thresholds of boundary_limit_flag.
inline constexpr double kZeroLimitPsiMax = 1e-4;
inline constexpr double kZeroLimitMinSlope = 0.45;
inline constexpr double kDivergentMaxSlope = -0.25;
inline constexpr double kDivergentPsiMin = 1.0;

/// Near a pole every solution that decays is psi ~ c (1 - |r|)^(1/2) plus a
/// multiple of a mode with negative exponent, so 1/2 is the decay slope of
/// the separatrix itself.
inline constexpr double kSeparatrixSlope = 0.5;

/// Bisection width for event localization in r.
inline constexpr double kEventRTol = 1e-10;

}  // namespace imcf
