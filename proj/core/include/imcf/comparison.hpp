#pragma once

#include <cstddef>

#include "imcf/geometry.hpp"
#include "imcf/profile_ode.hpp"

namespace imcf {

/// h1 bounds arctan(psi) from above on a blow-down trace; h2 bounds it from
/// below on a trace started inside the eta-band over (b, 1).
enum class ComparisonBound { H1, H2 };

struct ComparisonReport {
  ComparisonBound which = ComparisonBound::H1;
  double r0 = 0.0;
  double psi0 = 0.0;
  /// arctan(psi(r0)) - h(r0); zero by construction.
  double start_gap = 0.0;
  /// Largest violation over the samples after r0: arctan(psi) - h1 for H1,
  /// h2 - arctan(psi) for H2. Negative means the bound holds strictly.
  double max_violation = 0.0;
  double argmax_r = 0.0;
  std::size_t n_checked = 0;
  /// True when h is decreasing (H1) / increasing (H2) along the checked samples.
  bool monotone = true;
};

/// F(r) such that h(r) = F(r) - F(r0) + arctan(psi0); the antiderivative of
/// -(1+psi0^2)/(k sqrt(1-r^2)) + psi0 (n-1)(r-R)/(k(1-r^2)).
double comparison_antiderivative(double r, double psi0, const Parameters& p);

/// h(r) for the bound anchored at (r0, psi0).
double comparison_h(double r, double r0, double psi0, const Parameters& p);

/// Evaluates the bound along a forward trace anchored at its first sample.
/// H1 requires psi0 < 0 with r0 in (a, 1), or r0 in (-1, a] with
/// psi0 < eta_1(r0). H2 requires r0 in (b, 1) with eta_1 < psi0 < eta_2 and is
/// checked on the samples where psi stays below the nullcline midpoint.
/// Throws HypothesisUnmet otherwise.
ComparisonReport comparison_bound_h(const Trace& trace, ComparisonBound which, const Parameters& p);

}  // namespace imcf
