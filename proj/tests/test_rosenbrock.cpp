#include <gtest/gtest.h>

#include <cmath>

#include "rosenbrock.hpp"

using imcf::detail::Mat;
using imcf::detail::rosenbrock_step;
using imcf::detail::Vec;

namespace {

// Rotation with a nonlinear damping term; exact solution has |y| known only
// numerically, so orders are measured by step halving.
struct Oscillator {
  Vec<2> rhs(const Vec<2>& y) const { return Vec<2>(y(1), -y(0) - 0.5 * y(1) * y(1) * y(1)); }
  Mat<2> jacobian(const Vec<2>& y) const {
    Mat<2> j;
    j << 0.0, 1.0, -1.0, -1.5 * y(1) * y(1);
    return j;
  }
};

struct Decay {
  double lambda;
  Vec<1> rhs(const Vec<1>& y) const { return Vec<1>(lambda * y(0)); }
  Mat<1> jacobian(const Vec<1>&) const { return Mat<1>::Constant(lambda); }
};

Vec<2> solve(const Oscillator& sys, Vec<2> y, double t, int steps) {
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) y = rosenbrock_step<2>(sys, y, h).y;
  return y;
}

}  // namespace

TEST(Rosenbrock, FourthOrderConvergence) {
  const Oscillator sys;
  const Vec<2> y0(1.0, 0.0);
  const Vec<2> ref = solve(sys, y0, 2.0, 4096);
  const double e1 = (solve(sys, y0, 2.0, 32) - ref).norm();
  const double e2 = (solve(sys, y0, 2.0, 64) - ref).norm();
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 3.7);
  EXPECT_LT(order, 4.5);
}

TEST(Rosenbrock, ErrorEstimateIsThirdOrderLocal) {
  const Oscillator sys;
  const Vec<2> y0(0.3, 0.8);
  const double a = rosenbrock_step<2>(sys, y0, 0.1).err.norm();
  const double b = rosenbrock_step<2>(sys, y0, 0.05).err.norm();
  EXPECT_NEAR(std::log2(a / b), 4.0, 0.5);
}

TEST(Rosenbrock, StableOnStiffDecay) {
  const Decay sys{-1e6};
  Vec<1> y(1.0);
  for (int i = 0; i < 10; ++i) y = rosenbrock_step<1>(sys, y, 0.1).y;
  EXPECT_LT(std::abs(y(0)), 1e-3);
}

TEST(Rosenbrock, NegativeStepIntegratesBackward) {
  const Decay sys{-1.0};
  Vec<1> y(1.0);
  for (int i = 0; i < 100; ++i) y = rosenbrock_step<1>(sys, y, -0.01).y;
  EXPECT_NEAR(y(0), std::exp(1.0), 1e-8);
}
