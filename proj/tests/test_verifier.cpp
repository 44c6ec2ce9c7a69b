#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "imcf/error.hpp"
#include "imcf/verifier.hpp"

using namespace imcf;

namespace {

const Parameters kP21 = validate_parameters(2, 1, 1, 1);

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::ParseError;
}

Trace synthetic(double vp, double v_slope) {
  Trace t;
  t.carries_profile = true;
  for (int i = 0; i <= 100; ++i) {
    const double r = -0.5 + i / 100.0;
    t.samples.push_back({r, std::sqrt(1 - r * r) * vp, v_slope * r, vp});
  }
  return t;
}

}  // namespace

TEST(Reduction, ZeroVprimeLeavesTheConstantTerm) {
  const ResidualReport rep = reduction_residual(synthetic(0.0, 0.0), kP21);
  EXPECT_NEAR(rep.max_abs, 2.0, 1e-12);
  EXPECT_GT(rep.n_samples, 50u);
}

TEST(PdeResidual, ConstantProfileLeavesOne) {
  const ResidualReport rep = pde_residual_k1(synthetic(0.0, 0.0), kP21);
  EXPECT_NEAR(rep.max_abs, 1.0, 1e-12);
}

TEST(Reduction, SmallOnIntegratedTraces) {
  for (const Parameters& p : {kP21, validate_parameters(4, 2, 1, 2), validate_parameters(7, 6, 1, 1)}) {
    const Trace t = integrate_profile({0.1, -0.2}, Direction::Forward, p, {});
    const ResidualReport rep = reduction_residual(t, p);
    EXPECT_LE(rep.max_rel, 1e-6) << p.n << "," << p.k;
    EXPECT_GE(rep.argmax_r, t.samples.front().r);
    EXPECT_LE(rep.argmax_r, t.samples.back().r);
  }
}

TEST(Reduction, DetectsPerturbation) {
  const Trace t = integrate_profile({0.1, -0.2}, Direction::Forward, kP21, {});
  ResidualOptions opt;
  opt.perturb = 0.01;
  EXPECT_GT(reduction_residual(t, kP21, opt).max_rel, 1e-3);
  EXPECT_GT(pde_residual_k1(t, kP21, opt).max_rel, 1e-3);
}

TEST(PdeResidual, ConvergesUnderGridRefinement) {
  const Trace t = integrate_profile({0.0, 0.3}, Direction::Forward, kP21, {});
  ResidualOptions coarse, fine;
  coarse.grid_points = 50;
  fine.grid_points = 100;
  const double a = pde_residual_k1(t, kP21, coarse).max_rel;
  const double b = pde_residual_k1(t, kP21, fine).max_rel;
  EXPECT_GT(a / b, 3.0) << a << " " << b;
}

TEST(PdeResidual, AgreesWithReductionOnRandomTraces) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(-0.8, 0.8), up(-2.0, 2.0);
  for (int i = 0; i < 6; ++i) {
    const ProfileState ic{ur(rng), up(rng)};
    const Trace t = integrate_profile(ic, i % 2 ? Direction::Backward : Direction::Forward, kP21, {});
    EXPECT_LE(reduction_residual(t, kP21).max_rel, 1e-6);
    EXPECT_LE(pde_residual_k1(t, kP21).max_rel, 1e-5);
  }
}

TEST(Verifier, ErrorContracts) {
  const Parameters p2 = validate_parameters(3, 2, 1, 1);
  const Trace t = integrate_profile({0.1, 0.0}, Direction::Forward, p2, {});
  EXPECT_EQ(code_of([&] { pde_residual_k1(t, p2); }), ErrorCode::WrongK);
  const Trace bare = integrate_psi({0.1, 0.0}, Direction::Forward, kP21, {});
  EXPECT_EQ(code_of([&] { reduction_residual(bare, kP21); }), ErrorCode::InsufficientSamples);
  Trace tiny = synthetic(0.1, 0.0);
  tiny.samples.resize(3);
  EXPECT_EQ(code_of([&] { reduction_residual(tiny, kP21); }), ErrorCode::InsufficientSamples);
  EXPECT_EQ(code_of([&] { critical_point_check(integrate_profile({0.0, 0.0}, Direction::Forward, kP21, {}), kP21); }),
            ErrorCode::NoCriticalPoint);
}

TEST(MunznerBeta, KOneAndTwo) {
  auto grid = [](int k) {
    std::vector<double> s;
    for (int i = 1; i < 50; ++i) s.push_back(M_PI / k * i / 50.0);
    return s;
  };
  for (int n = 2; n <= 20; ++n) {
    EXPECT_LE(munzner_beta_oracle(validate_parameters(n, 1, n - 1, n - 1), grid(1)).max_abs, 1e-10);
    for (int m1 = 1; m1 < n - 1; ++m1) {
      const int m2 = n - 1 - m1;
      EXPECT_LE(munzner_beta_oracle(validate_parameters(n, 2, m1, m2), grid(2)).max_abs, 1e-10);
    }
  }
}

TEST(MunznerBeta, HigherKOnAlternatingMultiplicities) {
  for (const Parameters& p : {validate_parameters(4, 3, 1, 1), validate_parameters(9, 4, 1, 3),
                              validate_parameters(7, 6, 1, 1), validate_parameters(13, 6, 2, 2)}) {
    std::vector<double> s;
    for (int i = 1; i < 40; ++i) s.push_back(M_PI / p.k * i / 40.0);
    EXPECT_LE(munzner_beta_oracle(p, s).max_abs, 1e-10) << p.n << "," << p.k;
  }
}

TEST(MunznerBeta, FocalProximity) {
  EXPECT_EQ(code_of([] { munzner_beta_oracle(kP21, {1e-4}); }), ErrorCode::FocalProximity);
  EXPECT_EQ(code_of([] { munzner_beta_oracle(kP21, {M_PI - 1e-4}); }), ErrorCode::FocalProximity);
  EXPECT_EQ(code_of([] { munzner_beta_oracle(kP21, {4.0}); }), ErrorCode::FocalProximity);
}

TEST(CriticalPoint, TypeIIMinimum) {
  const Band band = band_bounds(kP21);
  const double r0 = (band.b + 1) / 2;
  const Trace t = integrate_profile({r0, eta_midpoint(r0, kP21)}, Direction::Backward, kP21, {});
  const ResidualReport rep = critical_point_check(t, kP21);
  EXPECT_GE(rep.n_samples, 1u);
  EXPECT_LE(rep.max_rel, 1e-5);
  EXPECT_TRUE(rep.sign_agreement);
}
