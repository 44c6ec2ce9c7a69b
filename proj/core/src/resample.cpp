#include "imcf/resample.hpp"

#include <algorithm>

#include "imcf/error.hpp"

namespace imcf {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order) {
  const std::size_t n = nodes.size();
  const std::size_t mo = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> c(mo + 1, std::vector<double>(n, 0.0));
  if (n == 0) return c;
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, mo);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

LocalInterpolant::LocalInterpolant(std::vector<double> x, std::vector<double> y, std::size_t points)
    : x_(std::move(x)), y_(std::move(y)), points_(points) {
  if (x_.size() != y_.size() || x_.size() < 2) {
    throw Error(ErrorCode::InsufficientSamples, "interpolation needs two or more matching nodes");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw Error(ErrorCode::DomainError, "interpolation nodes must increase");
  }
  points_ = std::clamp<std::size_t>(points_, 2, x_.size());
}

std::size_t LocalInterpolant::first_node(double t) const {
  const auto it = std::lower_bound(x_.begin(), x_.end(), t);
  const std::ptrdiff_t centre = it - x_.begin();
  const std::ptrdiff_t start = centre - static_cast<std::ptrdiff_t>(points_ / 2);
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(start, 0, static_cast<std::ptrdiff_t>(x_.size() - points_)));
}

double LocalInterpolant::eval(double t, int m) const {
  const std::size_t s = first_node(t);
  const auto w = fd_weights(t, std::span<const double>(x_).subspan(s, points_), m);
  double acc = 0.0;
  for (std::size_t j = 0; j < points_; ++j) acc += w[static_cast<std::size_t>(m)][j] * y_[s + j];
  return acc;
}

NodeDerivatives node_derivatives(std::span<const double> x, std::span<const double> y, std::size_t half) {
  NodeDerivatives out;
  const std::size_t n = x.size();
  out.d1.assign(n, 0.0);
  out.d2.assign(n, 0.0);
  if (n < 2 * half + 1) return out;
  out.first = half;
  out.last = n - half;
  for (std::size_t i = half; i + half < n; ++i) {
    const auto nodes = x.subspan(i - half, 2 * half + 1);
    const auto w = fd_weights(x[i], nodes, 2);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      out.d1[i] += w[1][j] * y[i - half + j];
      out.d2[i] += w[2][j] * y[i - half + j];
    }
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<double> central_first(const std::vector<double>& f, double h) {
  std::vector<double> d(f.size(), 0.0);
  for (std::size_t i = 2; i + 2 < f.size(); ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  }
  return d;
}

std::vector<double> central_second(const std::vector<double>& f, double h) {
  std::vector<double> d(f.size(), 0.0);
  for (std::size_t i = 2; i + 2 < f.size(); ++i) {
    d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
  }
  return d;
}

std::pair<std::size_t, std::size_t> longest_run(std::size_t count,
                                                const std::function<bool(std::size_t)>& keep) {
  std::pair<std::size_t, std::size_t> best{0, 0};
  std::size_t start = 0;
  for (std::size_t i = 0; i <= count; ++i) {
    if (i < count && keep(i)) continue;
    if (i - start > best.second - best.first) best = {start, i};
    start = i + 1;
  }
  return best;
}

}  // namespace imcf
