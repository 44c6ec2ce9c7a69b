#pragma once

#include <cstddef>
#include <vector>

#include "imcf/geometry.hpp"
#include "imcf/profile_ode.hpp"

namespace imcf {

struct ResidualReport {
  double max_abs = 0.0;
  /// max |residual| / (1 + largest term magnitude) over the checked points.
  double max_rel = 0.0;
  double argmax_r = 0.0;
  std::size_t n_samples = 0;
  /// critical_point_check only: every sign(V'') matched sign(r0 psi(r0)).
  bool sign_agreement = true;
};

/// Where residuals are evaluated: the longest run of samples with
/// |psi| <= psi_window and 1 - |r| >= pole_margin. Derivatives come from
/// centered 7-node stencils on the sample grid itself, or, with grid_points
/// set, from 5-point stencils on a uniform resampling of that run.
struct ResidualOptions {
  double psi_window = 3.0;
  double pole_margin = 1e-2;
  std::size_t grid_points = 0;
  /// Relative perturbation applied to V' (and V) before resampling.
  double perturb = 0.0;
};

/// Residual of 2aV'' + 2a^2 V'^4 + a(2b - a')V'^3 + 4aV'^2 + 2bV' + 2 with a,
/// b the isoparametric coefficients and V'' from differencing V'.
/// Throws InsufficientSamples with fewer than five usable samples.
ResidualReport reduction_residual(const Trace& trace, const Parameters& p,
                                  const ResidualOptions& opt = {});

/// k = 1 only: writes r = cos(theta), u(theta) = V(cos theta) and evaluates the
/// rotationally symmetric graph-soliton equation on S^n directly in theta.
/// Throws WrongK when p.k != 1.
ResidualReport pde_residual_k1(const Trace& trace, const Parameters& p,
                               const ResidualOptions& opt = {});

/// Compares beta(cos(ks)) against the Laplacian of r = cos(ks) computed from
/// the principal curvatures cot(s + (i-1) pi/k) with multiplicities
/// alternating m1, m2. Throws FocalProximity if some s is within 1e-3 of
/// 0 or pi/k (or outside).
ResidualReport munzner_beta_oracle(const Parameters& p, const std::vector<double>& s_grid);

inline constexpr double kFocalMargin = 1e-3;

/// At every EtaTouch of a profile-carrying trace, compares the differenced V''
/// with r0 psi(r0) / (k (1 - r0^2)^(3/2)). Throws NoCriticalPoint when the
/// trace has no EtaTouch.
ResidualReport critical_point_check(const Trace& trace, const Parameters& p);

}  // namespace imcf
