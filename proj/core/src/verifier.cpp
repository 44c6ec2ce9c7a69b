#include "imcf/verifier.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "imcf/error.hpp"
#include "imcf/resample.hpp"
#include "window.hpp"

namespace imcf {

ResidualReport reduction_residual(const Trace& trace, const Parameters& p,
                                  const ResidualOptions& opt) {
  if (trace.samples.size() < 5) throw Error(ErrorCode::InsufficientSamples, "fewer than five samples");
  detail::Window w = detail::select_window(trace, opt);
  for (double& v : w.Vp) v *= 1.0 + opt.perturb;

  // (r, V', V'') triples: on the sample grid, or on a uniform resampling.
  std::vector<double> rs, v1, v2;
  if (opt.grid_points == 0) {
    const NodeDerivatives d = node_derivatives(w.r, w.Vp, detail::kStencilHalf);
    for (std::size_t i = d.first; i < d.last; ++i) {
      rs.push_back(w.r[i]);
      v1.push_back(w.Vp[i]);
      v2.push_back(d.d1[i]);
    }
  } else {
    const LocalInterpolant vp(w.r, w.Vp, detail::kInterpolationPoints);
    const std::vector<double> grid = uniform_grid(w.r.front(), w.r.back(), std::max<std::size_t>(opt.grid_points, 5));
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = vp(grid[i]);
    const std::vector<double> fp = central_first(f, grid[1] - grid[0]);
    for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
      rs.push_back(grid[i]);
      v1.push_back(f[i]);
      v2.push_back(fp[i]);
    }
  }

  detail::ResidualStats stats;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = rs[i], v = v1[i];
    const double al = alpha(r, p), be = beta(r, p), alp = alpha_prime(r, p);
    const std::array<double, 6> t{2.0 * al * v2[i],
                                  2.0 * al * al * v * v * v * v,
                                  al * (2.0 * be - alp) * v * v * v,
                                  4.0 * al * v * v,
                                  2.0 * be * v,
                                  2.0};
    double sum = 0.0, big = 0.0;
    for (double x : t) {
      sum += x;
      big = std::max(big, std::abs(x));
    }
    stats.add(r, sum, big);
  }
  if (stats.rep.n_samples == 0) throw Error(ErrorCode::InsufficientSamples, "no residual points");
  return stats.rep;
}

ResidualReport munzner_beta_oracle(const Parameters& p, const std::vector<double>& s_grid) {
  validate_parameters(p.n, p.k, p.m1, p.m2);
  const double k = p.k;
  const double period = std::numbers::pi / k;
  detail::ResidualStats stats;
  for (double s : s_grid) {
    if (!(s >= kFocalMargin && s <= period - kFocalMargin)) {
      throw Error(ErrorCode::FocalProximity, "s = " + std::to_string(s) + " too close to a focal value");
    }
    double curv = 0.0, big = k * k;
    for (int i = 0; i < p.k; ++i) {
      const double m = (i % 2 == 0) ? p.m1 : p.m2;
      const double term = m / std::tan(s + i * period);
      curv += term;
      big = std::max(big, std::abs(k * std::sin(k * s) * term));
    }
    const double oracle = -k * k * std::cos(k * s) - k * std::sin(k * s) * curv;
    const double r = std::cos(k * s);
    stats.add(r, oracle - beta(r, p), big);
  }
  return stats.rep;
}

ResidualReport critical_point_check(const Trace& trace, const Parameters& p) {
  bool any = false;
  for (const Event& e : trace.events) any = any || e.kind == EventKind::EtaTouch;
  if (!any) throw Error(ErrorCode::NoCriticalPoint, "trace has no EtaTouch event");

  ResidualOptions opt;
  opt.psi_window = 1e3;
  opt.pole_margin = 1e-4;
  const detail::Window w = detail::select_window(trace, opt);
  const LocalInterpolant vp(w.r, w.Vp, detail::kInterpolationPoints);

  detail::ResidualStats stats;
  for (const Event& e : trace.events) {
    if (e.kind != EventKind::EtaTouch) continue;
    const double r0 = e.r_at;
    if (!(r0 > w.r.front() && r0 < w.r.back())) continue;
    const double fd = vp.eval(r0, 1);
    const double closed = r0 * e.psi_at / (p.k * std::pow(1.0 - r0 * r0, 1.5));
    stats.add(r0, fd - closed, std::abs(closed));
    const int want = (r0 * e.psi_at > 0) - (r0 * e.psi_at < 0);
    const int got = (fd > 0) - (fd < 0);
    if (std::abs(r0) > kEventRTol && got != want) stats.rep.sign_agreement = false;
  }
  return stats.rep;
}

}  // namespace imcf
