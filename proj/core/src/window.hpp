#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "imcf/error.hpp"
#include "imcf/profile_ode.hpp"
#include "imcf/resample.hpp"
#include "imcf/verifier.hpp"

namespace imcf::detail {

/// The residual window of a trace in increasing r.
struct Window {
  std::vector<double> r, psi, V, Vp;
};

inline Window select_window(const Trace& trace, const ResidualOptions& opt) {
  if (!trace.carries_profile) {
    throw Error(ErrorCode::InsufficientSamples, "trace does not carry V and V'");
  }
  const auto& s = trace.samples;
  const auto [first, last] = longest_run(s.size(), [&](std::size_t i) {
    return std::abs(s[i].psi) <= opt.psi_window && 1.0 - std::abs(s[i].r) >= opt.pole_margin &&
           s[i].V.has_value() && s[i].Vp.has_value();
  });
  if (last - first < 5) {
    throw Error(ErrorCode::InsufficientSamples, "fewer than five samples inside the residual window");
  }
  Window w;
  for (std::size_t i = first; i < last; ++i) {
    w.r.push_back(s[i].r);
    w.psi.push_back(s[i].psi);
    w.V.push_back(*s[i].V);
    w.Vp.push_back(*s[i].Vp);
  }
  if (w.r.front() > w.r.back()) {
    std::reverse(w.r.begin(), w.r.end());
    std::reverse(w.psi.begin(), w.psi.end());
    std::reverse(w.V.begin(), w.V.end());
    std::reverse(w.Vp.begin(), w.Vp.end());
  }
  return w;
}

/// Node order of the local interpolant used for uniform resampling.
inline constexpr std::size_t kInterpolationPoints = 8;

/// Half-width of the centered stencils applied on the sample grid.
inline constexpr std::size_t kStencilHalf = 3;

/// Accumulates residual statistics with the (1 + largest term) normalization.
struct ResidualStats {
  ResidualReport rep;

  void add(double r, double residual, double largest_term) {
    const double a = std::abs(residual);
    const double rel = a / (1.0 + largest_term);
    if (rep.n_samples == 0 || rel > rep.max_rel) {
      rep.max_rel = rel;
      rep.argmax_r = r;
    }
    rep.max_abs = std::max(rep.max_abs, a);
    ++rep.n_samples;
  }
};

}  // namespace imcf::detail
