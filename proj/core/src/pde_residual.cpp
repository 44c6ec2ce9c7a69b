// Deliberately independent of the phase equation: only V samples and the
// polar form of the graph-soliton equation on S^n enter here.
#include <array>
#include <cmath>

#include "imcf/error.hpp"
#include "imcf/resample.hpp"
#include "imcf/verifier.hpp"
#include "window.hpp"

namespace imcf {

ResidualReport pde_residual_k1(const Trace& trace, const Parameters& p, const ResidualOptions& opt) {
  if (p.k != 1) throw Error(ErrorCode::WrongK, "the polar reduction needs k = 1");
  if (trace.samples.size() < 5) throw Error(ErrorCode::InsufficientSamples, "fewer than five samples");
  const detail::Window w = detail::select_window(trace, opt);

  // theta = acos(r) decreases with r; walk the window backwards.
  const std::size_t m = w.r.size();
  std::vector<double> th(m), u(m);
  for (std::size_t i = 0; i < m; ++i) {
    th[i] = std::acos(w.r[m - 1 - i]);
    u[i] = w.V[m - 1 - i] * (1.0 + opt.perturb);
  }
  std::vector<double> ts, d1, d2;
  if (opt.grid_points == 0) {
    const NodeDerivatives d = node_derivatives(th, u, detail::kStencilHalf);
    for (std::size_t i = d.first; i < d.last; ++i) {
      ts.push_back(th[i]);
      d1.push_back(d.d1[i]);
      d2.push_back(d.d2[i]);
    }
  } else {
    const LocalInterpolant us(th, u, detail::kInterpolationPoints);
    const std::vector<double> grid = uniform_grid(th.front(), th.back(), std::max<std::size_t>(opt.grid_points, 5));
    const double h = grid[1] - grid[0];
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = us(grid[i]);
    const std::vector<double> g1 = central_first(f, h), g2 = central_second(f, h);
    for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
      ts.push_back(grid[i]);
      d1.push_back(g1[i]);
      d2.push_back(g2[i]);
    }
  }

  const double nm1 = p.n - 1;
  detail::ResidualStats stats;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i], ut = d1[i], utt = d2[i];
    const double g2 = ut * ut;
    const std::array<double, 5> terms{utt, nm1 * std::cos(t) / std::sin(t) * ut, g2, 1.0,
                                      -g2 * utt / (1.0 + g2)};
    double sum = 0.0, big = 0.0;
    for (double x : terms) {
      sum += x;
      big = std::max(big, std::abs(x));
    }
    stats.add(std::cos(t), sum, big);
  }
  if (stats.rep.n_samples == 0) throw Error(ErrorCode::InsufficientSamples, "no residual points");
  return stats.rep;
}

}  // namespace imcf
