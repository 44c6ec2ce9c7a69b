#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "imcf/error.hpp"
#include "imcf/geometry.hpp"

using namespace imcf;

namespace {

ErrorCode code_of(int n, int k, int m1, int m2) {
  try {
    validate_parameters(n, k, m1, m2);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for (" << n << "," << k << "," << m1 << "," << m2 << ")";
  return ErrorCode::ParseError;
}

const std::vector<std::tuple<int, int, int, int>> kTuples{
    {2, 1, 1, 1}, {3, 2, 1, 1}, {4, 2, 1, 2}, {4, 3, 1, 1}, {9, 4, 1, 3}, {7, 6, 1, 1}, {11, 2, 9, 1}};

}  // namespace

TEST(Parameters, RejectsInadmissibleTuples) {
  EXPECT_EQ(code_of(3, 5, 1, 1), ErrorCode::BadK);
  EXPECT_EQ(code_of(3, 0, 1, 1), ErrorCode::BadK);
  EXPECT_EQ(code_of(4, 3, 1, 2), ErrorCode::UnequalMultiplicities);
  EXPECT_EQ(code_of(13, 6, 2, 1), ErrorCode::UnequalMultiplicities);
  EXPECT_EQ(code_of(5, 1, 1, 1), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of(5, 2, 1, 1), ErrorCode::DimensionMismatch);
}

TEST(Parameters, RFollowsK) {
  EXPECT_EQ(validate_parameters(2, 1, 1, 1).R, 0.0);
  EXPECT_EQ(validate_parameters(7, 3, 2, 2).R, 0.0);
  EXPECT_EQ(validate_parameters(7, 6, 1, 1).R, 0.0);
  EXPECT_NEAR(validate_parameters(4, 2, 1, 2).R, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(validate_parameters(9, 4, 1, 3).R, 0.5, 1e-15);
  EXPECT_NEAR(validate_parameters(11, 2, 9, 1).R, -0.8, 1e-15);
}

TEST(Geometry, AlphaBetaClosedForms) {
  const Parameters p = validate_parameters(4, 2, 1, 2);
  EXPECT_DOUBLE_EQ(alpha(0.5, p), 4.0 * 0.75);
  EXPECT_DOUBLE_EQ(alpha(1.0, p), 0.0);
  EXPECT_DOUBLE_EQ(alpha(-1.0, p), 0.0);
  EXPECT_DOUBLE_EQ(alpha_prime(0.5, p), -4.0);
  // (m2 - m1)/2 k^2 - k (n + k - 1) r = 2 - 10 r
  EXPECT_DOUBLE_EQ(beta(0.3, p), 2.0 - 3.0);
  EXPECT_THROW(alpha(1.5, p), Error);
  EXPECT_THROW(beta(-1.01, p), Error);
  // k = 1: beta = -n r.
  const Parameters q = validate_parameters(5, 1, 4, 4);
  EXPECT_DOUBLE_EQ(beta(0.25, q), -5.0 * 0.25);
}

TEST(Geometry, BandBoundsMatchReference) {
  // Reference values from a 30-digit evaluation of the closed form.
  struct Ref {
    int n, k, m1, m2;
    double a, b;
  };
  const Ref refs[] = {
      {2, 1, 1, 1, -0.89442719099991588, 0.89442719099991588},
      {3, 2, 1, 1, -0.70710678118654752, 0.70710678118654752},
      {4, 2, 1, 2, -0.30216947925196224, 0.76370794079042378},
      {4, 3, 1, 1, -0.55470019622522912, 0.55470019622522912},
      {9, 4, 1, 3, 0.25849698379623592, 0.68267948679199937},
      {7, 6, 1, 1, -0.31622776601683793, 0.31622776601683793},
      {11, 2, 9, 1, -0.89085683308339921, -0.64760470537813926},
  };
  for (const Ref& r : refs) {
    const Band band = band_bounds(validate_parameters(r.n, r.k, r.m1, r.m2));
    EXPECT_NEAR(band.a, r.a, 1e-14) << r.n << "," << r.k;
    EXPECT_NEAR(band.b, r.b, 1e-14) << r.n << "," << r.k;
  }
}

TEST(Geometry, EtaReferenceValues) {
  const Parameters p = validate_parameters(2, 1, 1, 1);
  const EtaPair e = eta_pair(0.95, p);
  EXPECT_NEAR(e.eta1, 0.37487433446131173, 1e-14);
  EXPECT_NEAR(e.eta2, 2.6675605878353438, 1e-13);
  const Parameters q = validate_parameters(4, 2, 1, 2);
  const EtaPair f = eta_pair(-0.9, q);
  EXPECT_NEAR(f.eta1, -8.3688920227027994, 1e-13);
  EXPECT_NEAR(f.eta2, -0.11949013050798595, 1e-14);
}

TEST(Geometry, EtaMeetAtBandEdges) {
  for (const auto& [n, k, m1, m2] : kTuples) {
    const Parameters p = validate_parameters(n, k, m1, m2);
    const Band band = band_bounds(p);
    for (double r : {band.a, band.b}) {
      const double expect = (n - 1) * (r - p.R) / (2.0 * std::sqrt(1.0 - r * r));
      EXPECT_NEAR(eta(Branch::Eta1, r, p), expect, 1e-7);
      EXPECT_NEAR(eta(Branch::Eta2, r, p), expect, 1e-7);
    }
  }
  // n = 2, R = 0: the meeting value is exactly 1.
  const Parameters p = validate_parameters(2, 1, 1, 1);
  EXPECT_NEAR(eta(Branch::Eta1, band_bounds(p).b, p), 1.0, 1e-7);
}

TEST(Geometry, EtaRejectsBandInteriorAndPoles) {
  const Parameters p = validate_parameters(2, 1, 1, 1);
  try {
    eta(Branch::Eta1, 0.0, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BandInterior);
  }
  EXPECT_THROW(eta(Branch::Eta2, 1.0, p), Error);
  EXPECT_THROW(discriminant_B(-1.0, p), Error);
  EXPECT_NO_THROW(eta_midpoint(0.0, p));
}

// Property: the algebraic identities hold on every admissible tuple.
TEST(GeometryProperty, AlgebraicIdentities) {
  std::mt19937_64 rng(20240611);
  for (const auto& [n, k, m1, m2] : kTuples) {
    const Parameters p = validate_parameters(n, k, m1, m2);
    const Band band = band_bounds(p);
    EXPECT_LT(band.a, p.R);
    EXPECT_LT(p.R, band.b);
    EXPECT_NEAR(discriminant_B(band.a, p), 0.0, kAbsTol);
    EXPECT_NEAR(discriminant_B(band.b, p), 0.0, kAbsTol);
    std::uniform_real_distribution<double> ur(-0.999, 0.999);
    for (int i = 0; i < 1000; ++i) {
      const double r = ur(rng);
      const double B = discriminant_B(r, p);
      if (band.contains_open(r)) {
        EXPECT_LT(B, 0.0);
        for (double x : {-3.0, 0.0, 2.0}) EXPECT_GT(quadratic_A(x, r, p), 0.0);
        continue;
      }
      EXPECT_GE(B, 0.0);
      const EtaPair e = eta_pair(r, p);
      EXPECT_LE(e.eta1, e.eta2);
      EXPECT_NEAR(e.eta1 * e.eta2, 1.0, kAbsTol);
      const double scale = 1.0 + e.eta2 * e.eta2 + std::abs(e.eta2) * (n - 1);
      EXPECT_NEAR(quadratic_A(e.eta1, r, p), 0.0, kAbsTol * scale);
      EXPECT_NEAR(quadratic_A(e.eta2, r, p), 0.0, kAbsTol * scale);
      EXPECT_NEAR(zeta(Branch::Eta1, r, p), e.eta1 / (k * std::sqrt(1 - r * r)), 1e-12 * (1 + std::abs(e.eta1)));
    }
  }
}

// Property: the nullclines are positive on (b, 1) and negative on (-1, a)
// whenever the band lies on the right side of zero.
TEST(GeometryProperty, NullclineSigns) {
  for (const auto& [n, k, m1, m2] : kTuples) {
    const Parameters p = validate_parameters(n, k, m1, m2);
    const Band band = band_bounds(p);
    for (int i = 1; i < 50; ++i) {
      const double r = band.b + (1.0 - band.b) * i / 50.0;
      const EtaPair e = eta_pair(r, p);
      if (r > p.R) {
        EXPECT_GT(e.eta1, 0.0);
        EXPECT_GT(e.eta2, 0.0);
      }
      const double s = band.a - (band.a + 1.0) * i / 50.0;
      const EtaPair f = eta_pair(s, p);
      if (s < p.R) {
        EXPECT_LT(f.eta1, 0.0);
        EXPECT_LT(f.eta2, 0.0);
      }
    }
  }
}
