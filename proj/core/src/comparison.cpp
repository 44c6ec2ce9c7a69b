#include "imcf/comparison.hpp"

#include <cmath>
#include <limits>

#include "imcf/error.hpp"

namespace imcf {

double comparison_antiderivative(double r, double psi0, const Parameters& p) {
  const double k = p.k;
  const double nm1 = p.n - 1;
  return -(1.0 + psi0 * psi0) / k * std::asin(r) -
         psi0 * nm1 / (2.0 * k) * std::log1p(-r * r) -
         psi0 * nm1 * p.R / (2.0 * k) * std::log((1.0 + r) / (1.0 - r));
}

double comparison_h(double r, double r0, double psi0, const Parameters& p) {
  if (r == r0) return std::atan(psi0);
  return comparison_antiderivative(r, psi0, p) - comparison_antiderivative(r0, psi0, p) +
         std::atan(psi0);
}

ComparisonReport comparison_bound_h(const Trace& trace, ComparisonBound which, const Parameters& p) {
  if (trace.samples.empty()) throw Error(ErrorCode::HypothesisUnmet, "empty trace");
  if (trace.direction != Direction::Forward) {
    throw Error(ErrorCode::HypothesisUnmet, "comparison bounds apply to forward traces");
  }
  const ProfileState& start = trace.samples.front();
  const double r0 = start.r, psi0 = start.psi;
  const Band band = band_bounds(p);

  if (which == ComparisonBound::H1) {
    const bool ok = (r0 > band.a && psi0 < 0.0) ||
                    (r0 <= band.a && psi0 < eta(Branch::Eta1, r0, p));
    if (!ok) throw Error(ErrorCode::HypothesisUnmet, "h1 needs a blow-down initial condition");
  } else {
    bool ok = r0 > band.b && r0 < 1.0;
    if (ok) {
      const EtaPair e = eta_pair(r0, p);
      ok = e.eta1 < psi0 && psi0 < e.eta2;
    }
    if (!ok) throw Error(ErrorCode::HypothesisUnmet, "h2 needs r0 in (b, 1) inside the eta-band");
  }

  ComparisonReport rep;
  rep.which = which;
  rep.r0 = r0;
  rep.psi0 = psi0;
  rep.start_gap = std::atan(psi0) - comparison_h(r0, r0, psi0, p);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.argmax_r = r0;

  double prev_h = comparison_h(r0, r0, psi0, p);
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    const ProfileState& s = trace.samples[i];
    if (which == ComparisonBound::H2 && s.psi >= eta_midpoint(s.r, p)) break;
    const double h = comparison_h(s.r, r0, psi0, p);
    const double v = which == ComparisonBound::H1 ? std::atan(s.psi) - h : h - std::atan(s.psi);
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.argmax_r = s.r;
    }
    if (which == ComparisonBound::H1 ? h > prev_h : h < prev_h) rep.monotone = false;
    prev_h = h;
    ++rep.n_checked;
  }
  if (rep.n_checked == 0) rep.max_violation = 0.0;
  return rep;
}

}  // namespace imcf
