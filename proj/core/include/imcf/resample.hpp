#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace imcf {

/// Finite-difference weights (Fornberg) at x0 on arbitrary distinct nodes:
/// w[m][j] multiplies f(nodes[j]) in the m-th derivative, m = 0..max_order.
std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> nodes, int max_order);

/// Piecewise interpolation by the polynomial through the `points` nodes
/// nearest to the evaluation point. Abscissae must increase strictly.
class LocalInterpolant {
 public:
  LocalInterpolant(std::vector<double> x, std::vector<double> y, std::size_t points = 8);

  double operator()(double t) const { return eval(t, 0); }
  /// m-th derivative of the local polynomial at t (m <= 2).
  double eval(double t, int m) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::size_t first_node(double t) const;

  std::vector<double> x_, y_;
  std::size_t points_;
};

/// First and second derivatives at node i from the centered stencil of
/// 2*half+1 nodes; defined for half <= i < size - half.
struct NodeDerivatives {
  std::size_t first = 0, last = 0;  ///< valid node range [first, last)
  std::vector<double> d1, d2;
};
NodeDerivatives node_derivatives(std::span<const double> x, std::span<const double> y, std::size_t half = 3);

/// Uniform grid of `count` points spanning [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

/// Fourth-order central differences with spacing h at the interior points of a
/// uniform sample vector; entries closer than two points to either end are 0.
std::vector<double> central_first(const std::vector<double>& f, double h);
std::vector<double> central_second(const std::vector<double>& f, double h);

/// Longest half-open index range [first, last) on which keep(i) holds.
std::pair<std::size_t, std::size_t> longest_run(std::size_t count,
                                                const std::function<bool(std::size_t)>& keep);

}  // namespace imcf
