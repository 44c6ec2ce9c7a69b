#include "imcf/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "imcf/error.hpp"

namespace imcf {

std::string_view to_string(ProfileType t) {
  switch (t) {
    case ProfileType::I: return "I";
    case ProfileType::II: return "II";
    case ProfileType::III: return "III";
    case ProfileType::IV: return "IV";
    case ProfileType::V: return "V";
  }
  return "?";
}

std::string_view to_string(VprimeSubtype s) {
  switch (s) {
    case VprimeSubtype::Plain: return "plain";
    case VprimeSubtype::Primed: return "primed";
    case VprimeSubtype::DoublePrimed: return "double_primed";
  }
  return "?";
}

Profile integrate_both(const ProfileState& ic, const Parameters& p, const StepControl& ctl,
                       bool carry_profile) {
  auto run = carry_profile ? integrate_profile : integrate_psi;
  return Profile{run(ic, Direction::Backward, p, ctl), run(ic, Direction::Forward, p, ctl)};
}

namespace {

struct End {
  LimitFlag limit = LimitFlag::Finite;
  bool at_pole = false;
  double r = 0.0;
};

std::string describe(const Profile& profile) {
  const auto& s = profile.forward.samples.empty() ? ProfileState{} : profile.forward.samples.front();
  return "ic (r = " + std::to_string(s.r) + ", psi = " + std::to_string(s.psi) + "), backward " +
         std::string(to_string(profile.backward.termination.kind)) + "/" +
         std::string(to_string(profile.backward.termination.limit)) + ", forward " +
         std::string(to_string(profile.forward.termination.kind)) + "/" +
         std::string(to_string(profile.forward.termination.limit));
}

End end_of(const Trace& t) {
  const Termination& term = t.termination;
  switch (term.kind) {
    case TerminationKind::BlowUpMinus: return End{LimitFlag::MinusInfinity, false, term.r};
    case TerminationKind::BlowUpPlus: return End{LimitFlag::PlusInfinity, false, term.r};
    // Forward, psi can only run off to -inf through a blow-up (the mirror
    // for backward). Reaching the pole with that limit means the blow-up
    // abscissa lies within boundary_eps of it, which happens when psi is
    // small there: the distance shrinks like exp(-c / psi^2).
    case TerminationKind::HitPlusOne:
      if (term.limit == LimitFlag::MinusInfinity) return End{term.limit, false, term.r};
      return End{term.limit, true, 1.0};
    case TerminationKind::HitMinusOne:
      if (term.limit == LimitFlag::PlusInfinity) return End{term.limit, false, term.r};
      return End{term.limit, true, -1.0};
    case TerminationKind::StepLimit: break;
  }
  return End{};
}

bool nonincreasing(const Profile& prof) {
  const auto& f = prof.forward.samples;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i].psi > f[i - 1].psi) return false;
  }
  const auto& b = prof.backward.samples;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i].psi < b[i - 1].psi) return false;
  }
  return true;
}

std::optional<Extremum> find_extremum(const Profile& prof, const Parameters& p, bool minimum) {
  std::optional<Extremum> best;
  for (const Trace* t : {&prof.backward, &prof.forward}) {
    for (const Event& e : t->events) {
      if (e.kind != EventKind::EtaTouch) continue;
      if (!best || (minimum ? e.psi_at < best->value : e.psi_at > best->value)) {
        best = Extremum{e.r_at, e.psi_at, e.branch};
      }
    }
  }
  if (best) return best;
  // An initial condition placed on a nullcline is its own extremum.
  for (const Trace* t : {&prof.backward, &prof.forward}) {
    for (const ProfileState& s : t->samples) {
      if (!best || (minimum ? s.psi < best->value : s.psi > best->value)) {
        best = Extremum{s.r, s.psi, s.psi < eta_midpoint(s.r, p) ? Branch::Eta1 : Branch::Eta2};
      }
    }
  }
  return best;
}

}  // namespace

VprimeSubtype vprime_subtype_for(ProfileType t, double r0) {
  if (std::abs(r0) <= kEventRTol) return VprimeSubtype::Primed;
  const bool positive = r0 > 0.0;
  if (t == ProfileType::III) return positive ? VprimeSubtype::DoublePrimed : VprimeSubtype::Plain;
  return positive ? VprimeSubtype::Plain : VprimeSubtype::DoublePrimed;
}

Classification classify_profile(const Profile& profile, const Parameters& p) {
  const End left = end_of(profile.backward);
  const End right = end_of(profile.forward);
  if (profile.backward.termination.kind == TerminationKind::StepLimit ||
      profile.forward.termination.kind == TerminationKind::StepLimit) {
    throw Error(ErrorCode::Unclassifiable, "step limit reached; " + describe(profile));
  }

  using L = LimitFlag;
  Classification c;
  c.left_limit = left.limit;
  c.right_limit = right.limit;
  c.x = left.r;
  c.y = right.r;

  const bool left_plus_interior = left.limit == L::PlusInfinity && !left.at_pole;
  const bool right_minus_interior = right.limit == L::MinusInfinity && !right.at_pole;
  if (left_plus_interior && right_minus_interior) {
    c.profile_type = ProfileType::I;
  } else if (left_plus_interior && right.at_pole && right.limit == L::PlusInfinity) {
    c.profile_type = ProfileType::II;
  } else if (left.at_pole && left.limit == L::MinusInfinity && right_minus_interior) {
    c.profile_type = ProfileType::III;
  } else if (left_plus_interior && right.at_pole && right.limit == L::Zero) {
    c.profile_type = ProfileType::IV;
  } else if (left.at_pole && left.limit == L::Zero && right_minus_interior) {
    c.profile_type = ProfileType::V;
  } else {
    throw Error(ErrorCode::Unclassifiable, describe(profile));
  }

  c.psi_nonincreasing = nonincreasing(profile);
  if (c.profile_type == ProfileType::II || c.profile_type == ProfileType::III) {
    c.extremum = find_extremum(profile, p, c.profile_type == ProfileType::II);
    c.vprime_subtype = vprime_subtype_for(c.profile_type, c.extremum->r0);
  }
  return c;
}

Classification classify(const ProfileState& ic, const Parameters& p, const StepControl& ctl) {
  if (!(std::abs(ic.r) < 1.0)) {
    throw Error(ErrorCode::DomainError, "classify needs r in (-1, 1)");
  }
  return classify_profile(integrate_both(ic, p, ctl), p);
}

Table1Row table1_row(const Classification& c) {
  auto has = [&](LimitFlag f) { return c.left_limit == f || c.right_limit == f; };
  const bool ext = c.extremum.has_value();
  std::string lower, upper;
  if (has(LimitFlag::MinusInfinity)) {
    lower = "(-inf";
  } else if (ext && c.profile_type == ProfileType::II) {
    lower = "[eta_i(r0)";
  } else if (has(LimitFlag::Zero)) {
    lower = "[0";
  } else {
    lower = "[?";
  }
  if (has(LimitFlag::PlusInfinity)) {
    upper = "inf)";
  } else if (ext && c.profile_type == ProfileType::III) {
    upper = "eta_i(r0)]";
  } else if (has(LimitFlag::Zero)) {
    upper = "0]";
  } else {
    upper = "?]";
  }
  return Table1Row{lower + "," + upper, c.psi_nonincreasing ? "<0" : "mixed",
                   std::string(to_string(c.left_limit)), std::string(to_string(c.right_limit))};
}

std::string vprime_shape(const Classification& c, const Parameters& p) {
  std::string tag(to_string(c.profile_type));
  if (!c.vprime_subtype) return tag;
  const VprimeSubtype s = *c.vprime_subtype;
  // With k = 1, 3, 6 we have a < 0 < b, so r0 never changes sign.
  if ((p.k == 1 || p.k == 3 || p.k == 6) && s != VprimeSubtype::Plain) {
    throw Error(ErrorCode::Unclassifiable, "non-plain V' subtype with k = " + std::to_string(p.k));
  }
  if (s == VprimeSubtype::Primed) tag += "'";
  if (s == VprimeSubtype::DoublePrimed) tag += "''";
  return tag;
}

// ---------------------------------------------------------------------------

double default_probe(const Parameters& p, int side) {
  const Band band = band_bounds(p);
  return side > 0 ? 0.5 * (band.b + 1.0) : 0.5 * (band.a - 1.0);
}

ShootingRegime shooting_regime(const Parameters& p, int side, double r_probe, double psi0,
                               const StepControl& ctl) {
  const Direction dir = side > 0 ? Direction::Forward : Direction::Backward;
  const Trace t = integrate_psi(ProfileState{r_probe, psi0, {}, {}}, dir, p, ctl);
  // Outside the band a sign change of psi is final (the trace then blows up),
  // and so is a touch of the near nullcline (the trace then enters the band).
  // Termination alone decides too late: below the separatrix the blow-up
  // abscissa tends to the pole.
  for (const Event& e : t.events) {
    if (e.kind == EventKind::ZeroCross) return ShootingRegime::Lower;
    if (e.kind == EventKind::EtaTouch) return ShootingRegime::Upper;
  }
  switch (t.termination.kind) {
    case TerminationKind::BlowUpMinus:
    case TerminationKind::BlowUpPlus: return ShootingRegime::Lower;
    case TerminationKind::HitPlusOne:
    case TerminationKind::HitMinusOne: {
      const LimitFlag towards_band = side > 0 ? LimitFlag::PlusInfinity : LimitFlag::MinusInfinity;
      if (t.termination.limit == towards_band) return ShootingRegime::Upper;
      // Reached the pole inside the thin wedge between zero and the nullcline.
      // A decay slope above that of the separatrix means the negative-exponent
      // mode enters with the sign that later crosses zero, and vice versa.
      const std::optional<double> slope = boundary_log_slope(t.samples);
      if (!slope || std::abs(t.samples.back().psi) > kZeroLimitPsiMax) return ShootingRegime::Undecided;
      if (*slope > kSeparatrixSlope) return ShootingRegime::Lower;
      if (*slope < kSeparatrixSlope) return ShootingRegime::Upper;
      return ShootingRegime::Undecided;
    }
    case TerminationKind::StepLimit: break;
  }
  return ShootingRegime::Undecided;
}

SeparatrixResult find_separatrix(const Parameters& p, int side, double r_probe,
                                 const StepControl& ctl) {
  if (side != 1 && side != -1) throw Error(ErrorCode::DomainError, "side must be +1 or -1");
  const Band band = band_bounds(p);
  if (side > 0 ? !(r_probe > band.b && r_probe < 1.0) : !(r_probe > -1.0 && r_probe < band.a)) {
    throw Error(ErrorCode::DomainError, "r_probe outside the probe interval for this side");
  }
  // psi0 = 0 heads for a blow-up; the nearer nullcline value enters the band.
  double lo = 0.0;
  double hi = eta(side > 0 ? Branch::Eta1 : Branch::Eta2, r_probe, p);
  const ShootingRegime lo_regime = shooting_regime(p, side, r_probe, lo, ctl);
  const ShootingRegime hi_regime = shooting_regime(p, side, r_probe, hi, ctl);
  if (lo_regime != ShootingRegime::Lower || hi_regime != ShootingRegime::Upper) {
    throw Error(ErrorCode::BracketFailure,
                "regimes not separated at r_probe = " + std::to_string(r_probe));
  }

  SeparatrixResult res;
  res.history.push_back(BisectionStep{lo, hi, lo_regime, hi_regime});
  std::optional<double> undecided;
  while (std::abs(hi - lo) > kSeparatrixWidth) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const ShootingRegime m = shooting_regime(p, side, r_probe, mid, ctl);
    if (m == ShootingRegime::Lower) {
      lo = mid;
    } else if (m == ShootingRegime::Upper) {
      hi = mid;
    } else {
      undecided = mid;
      break;
    }
    res.history.push_back(BisectionStep{lo, hi, ShootingRegime::Lower, ShootingRegime::Upper});
  }
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.ic = ProfileState{r_probe, undecided.value_or(0.5 * (lo + hi)), {}, {}};
  return res;
}

// ---------------------------------------------------------------------------

std::vector<SweepCell> sweep(const Parameters& p, const std::vector<double>& r_grid,
                             const std::vector<double>& psi_grid, const StepControl& ctl,
                             unsigned threads) {
  const std::size_t nr = r_grid.size(), np = psi_grid.size();
  std::vector<SweepCell> cells(nr * np);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      SweepCell& cell = cells[i * np + j];
      cell.i = i;
      cell.j = j;
      cell.ic = ProfileState{r_grid[i], psi_grid[j], {}, {}};
    }
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cells.size())));

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_index = cells.size();
  std::string err_message;

  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      try {
        cells[idx].c = classify(cells[idx].ic, p, ctl);
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (idx < err_index) {
          err_index = idx;
          err_message = e.what();
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err_index < cells.size()) {
    const SweepCell& bad = cells[err_index];
    throw Error(ErrorCode::Unclassifiable, "sweep cell (" + std::to_string(bad.i) + ", " +
                                               std::to_string(bad.j) + "): " + err_message);
  }
  return cells;
}

}  // namespace imcf
