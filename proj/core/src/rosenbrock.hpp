#pragma once

// Linearly implicit Rosenbrock 4(3) pair with Shampine's parameters
// (gamma = 1/2), the set used by the classic "stiff" driver. Autonomous
// systems only: the time derivative terms vanish.

#include <Eigen/Dense>

namespace imcf::detail {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
template <int N>
using Mat = Eigen::Matrix<double, N, N>;

template <int N>
struct RosenbrockResult {
  Vec<N> y;
  Vec<N> err;  ///< embedded third-order error estimate
};

namespace ros {
inline constexpr double gam = 1.0 / 2.0;
inline constexpr double a21 = 2.0;
inline constexpr double a31 = 48.0 / 25.0;
inline constexpr double a32 = 6.0 / 25.0;
inline constexpr double c21 = -8.0;
inline constexpr double c31 = 372.0 / 25.0;
inline constexpr double c32 = 12.0 / 5.0;
inline constexpr double c41 = -112.0 / 125.0;
inline constexpr double c42 = -54.0 / 125.0;
inline constexpr double c43 = -2.0 / 5.0;
inline constexpr double b1 = 19.0 / 9.0;
inline constexpr double b2 = 1.0 / 2.0;
inline constexpr double b3 = 25.0 / 108.0;
inline constexpr double b4 = 125.0 / 108.0;
inline constexpr double e1 = 17.0 / 54.0;
inline constexpr double e2 = 7.0 / 36.0;
inline constexpr double e3 = 0.0;
inline constexpr double e4 = 125.0 / 108.0;
}  // namespace ros

/// One step of size h (either sign). System must provide
/// `Vec<N> rhs(const Vec<N>&) const` and `Mat<N> jacobian(const Vec<N>&) const`.
template <int N, class System>
RosenbrockResult<N> rosenbrock_step(const System& sys, const Vec<N>& y, double h) {
  using namespace ros;
  const Mat<N> a = Mat<N>::Identity() / (gam * h) - sys.jacobian(y);
  const Eigen::PartialPivLU<Mat<N>> lu(a);

  const Vec<N> g1 = lu.solve(sys.rhs(y));
  const Vec<N> g2 = lu.solve(sys.rhs(y + a21 * g1) + (c21 / h) * g1);
  const Vec<N> f3 = sys.rhs(y + a31 * g1 + a32 * g2);
  const Vec<N> g3 = lu.solve(f3 + (c31 * g1 + c32 * g2) / h);
  const Vec<N> g4 = lu.solve(f3 + (c41 * g1 + c42 * g2 + c43 * g3) / h);

  return RosenbrockResult<N>{y + b1 * g1 + b2 * g2 + b3 * g3 + b4 * g4,
                             e1 * g1 + e2 * g2 + e3 * g3 + e4 * g4};
}

}  // namespace imcf::detail
