#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imcf/geometry.hpp"
#include "imcf/profile_ode.hpp"

namespace imcf {

enum class ProfileType { I, II, III, IV, V };

std::string_view to_string(ProfileType t);

/// Which of the V' figures a Type II/III profile follows; decided by the sign
/// of the extremum abscissa r0.
enum class VprimeSubtype { Plain, Primed, DoublePrimed };

std::string_view to_string(VprimeSubtype s);

struct Extremum {
  double r0 = 0.0;
  double value = 0.0;  ///< psi_min (Type II) or psi_max (Type III)
  Branch branch = Branch::Eta1;
};

struct Classification {
  ProfileType profile_type = ProfileType::I;
  double x = -1.0;  ///< left end of Dom(psi)
  double y = 1.0;   ///< right end of Dom(psi)
  LimitFlag left_limit = LimitFlag::Finite;
  LimitFlag right_limit = LimitFlag::Finite;
  std::optional<Extremum> extremum;
  std::optional<VprimeSubtype> vprime_subtype;
  /// True when psi is non-increasing along every sample of both halves.
  bool psi_nonincreasing = true;
};

/// Both halves of the maximal solution through an initial condition.
struct Profile {
  Trace backward;
  Trace forward;
};

Profile integrate_both(const ProfileState& ic, const Parameters& p, const StepControl& ctl,
                       bool carry_profile = false);

/// Assembles the two terminal verdicts of a profile into one of the five
/// types. Throws Unclassifiable when they match no row.
Classification classify_profile(const Profile& profile, const Parameters& p);

Classification classify(const ProfileState& ic, const Parameters& p, const StepControl& ctl);

/// Sign of an extremum abscissa with |r0| <= kEventRTol treated as zero.
VprimeSubtype vprime_subtype_for(ProfileType t, double r0);

/// One row of the psi-behaviour table, derived from a classification.
struct Table1Row {
  std::string image;       ///< Im(psi)
  std::string psi_prime;   ///< "<0" or "mixed"
  std::string left_limit;  ///< limit as r decreases to x
  std::string right_limit; ///< limit as r increases to y

  bool operator==(const Table1Row&) const = default;
};

Table1Row table1_row(const Classification& c);

/// Name of the V' figure a classification follows: "I", "II", "II'",
/// "II''", "III", "III'", "III''", "IV" or "V".
std::string vprime_shape(const Classification& c, const Parameters& p);

// ---------------------------------------------------------------------------
// Separatrices: the Type IV (side +1) and Type V (side -1) solutions.

enum class ShootingRegime { Lower, Upper, Undecided };

struct BisectionStep {
  double lo = 0.0;
  double hi = 0.0;
  ShootingRegime lo_regime = ShootingRegime::Lower;
  ShootingRegime hi_regime = ShootingRegime::Upper;
};

struct SeparatrixResult {
  ProfileState ic;              ///< (r_probe, psi0)
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<BisectionStep> history;
};

/// Separatrix bisection stops at this bracket width in psi0.
inline constexpr double kSeparatrixWidth = 1e-12;

/// Default probe: midpoint of (b, 1) for side +1, of (-1, a) for side -1.
double default_probe(const Parameters& p, int side);

/// Regime of the half-trace started at (r_probe, psi0) towards the pole on
/// `side`: Lower = blow-up before the pole (Type I side), Upper = enters the
/// eta-band (Type II/III side), Undecided = reaches the pole with psi -> 0.
ShootingRegime shooting_regime(const Parameters& p, int side, double r_probe, double psi0,
                               const StepControl& ctl);

/// Shoots on psi0 at r_probe between the two regimes. The bracket ends are
/// only ever updated with decided points. Throws BracketFailure when the
/// default bracket does not separate the regimes.
SeparatrixResult find_separatrix(const Parameters& p, int side, double r_probe,
                                 const StepControl& ctl);

// ---------------------------------------------------------------------------

struct SweepCell {
  std::size_t i = 0;  ///< index into r_grid
  std::size_t j = 0;  ///< index into psi_grid
  ProfileState ic;
  Classification c;
};

/// Classifies every (r_grid[i], psi_grid[j]); results ordered by (i, j).
/// Cells run on up to `threads` workers (0 = hardware concurrency).
std::vector<SweepCell> sweep(const Parameters& p, const std::vector<double>& r_grid,
                             const std::vector<double>& psi_grid, const StepControl& ctl,
                             unsigned threads = 0);

}  // namespace imcf
