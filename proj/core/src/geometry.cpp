#include "imcf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "imcf/error.hpp"

namespace imcf {

namespace {

void require_closed(double r, const char* what) {
  if (!(std::abs(r) <= 1.0)) {
    throw Error(ErrorCode::DomainError,
                std::string(what) + " needs r in [-1, 1], got " + std::to_string(r));
  }
}

void require_open(double r, const char* what) {
  if (!(std::abs(r) < 1.0)) {
    throw Error(ErrorCode::DomainError,
                std::string(what) + " needs r in (-1, 1), got " + std::to_string(r));
  }
}

double nm1(const Parameters& p) { return static_cast<double>(p.n - 1); }

}  // namespace

Parameters validate_parameters(int n, int k, int m1, int m2) {
  if (k != 1 && k != 2 && k != 3 && k != 4 && k != 6) {
    throw Error(ErrorCode::BadK, "k must be one of 1, 2, 3, 4, 6; got " + std::to_string(k));
  }
  if (n < 2) {
    throw Error(ErrorCode::DimensionMismatch, "sphere dimension n must be >= 2");
  }
  const bool equal_mult = (k == 1 || k == 3 || k == 6);
  if (equal_mult && m1 != m2) {
    throw Error(ErrorCode::UnequalMultiplicities,
                "k = " + std::to_string(k) + " forces m1 = m2, got " +
                    std::to_string(m1) + " and " + std::to_string(m2));
  }
  // k (m1 + m2) / 2 = n - 1, kept in integers.
  if (k * (m1 + m2) != 2 * (n - 1)) {
    throw Error(ErrorCode::DimensionMismatch,
                "k (m1 + m2) / 2 = " + std::to_string(k * (m1 + m2)) + "/2 differs from n - 1 = " +
                    std::to_string(n - 1));
  }
  Parameters p{n, k, m1, m2, 0.0};
  if (!equal_mult) {
    p.R = -1.0 + static_cast<double>(k * m2) / static_cast<double>(n - 1);
    if (!(p.R > -1.0 && p.R < 1.0)) {
      throw Error(ErrorCode::ROutOfRange, "R = " + std::to_string(p.R) + " outside (-1, 1)");
    }
  }
  return p;
}

double alpha(double r, const Parameters& p) {
  require_closed(r, "alpha");
  const double k = p.k;
  return k * k * (1.0 - r * r);
}

double alpha_prime(double r, const Parameters& p) {
  require_closed(r, "alpha_prime");
  const double k = p.k;
  return -2.0 * k * k * r;
}

double beta(double r, const Parameters& p) {
  require_closed(r, "beta");
  const double k = p.k;
  return 0.5 * static_cast<double>(p.m2 - p.m1) * k * k -
         k * static_cast<double>(p.n + p.k - 1) * r;
}

double discriminant_B(double r, const Parameters& p) {
  require_open(r, "discriminant_B");
  const double c = nm1(p) * nm1(p);
  return (c + 4.0) * r * r - 2.0 * c * p.R * r + c * p.R * p.R - 4.0;
}

double quadratic_A(double x, double r, const Parameters& p) {
  require_open(r, "quadratic_A");
  const double s = std::sqrt(1.0 - r * r);
  return s * x * x - nm1(p) * (r - p.R) * x + s;
}

Band band_bounds(const Parameters& p) {
  const double c = nm1(p) * nm1(p);
  const double root = 2.0 * std::sqrt(c * (1.0 - p.R * p.R) + 4.0);
  return Band{(c * p.R - root) / (c + 4.0), (c * p.R + root) / (c + 4.0)};
}

EtaPair eta_pair(double r, const Parameters& p) {
  require_open(r, "eta");
  const Band band = band_bounds(p);
  if (band.contains_open(r)) {
    throw Error(ErrorCode::BandInterior,
                "eta undefined for r = " + std::to_string(r) + " inside (a, b)");
  }
  // Outside the open band B >= 0 mathematically; clamp rounding noise at a, b.
  const double disc = std::max(0.0, discriminant_B(r, p));
  const double s = std::sqrt(1.0 - r * r);
  const double q = nm1(p) * (r - p.R);
  // Larger-magnitude root first, the other from eta_1 * eta_2 = 1.
  const double big = (q + std::copysign(std::sqrt(disc), q)) / (2.0 * s);
  const double small = 1.0 / big;
  return big > 0.0 ? EtaPair{small, big} : EtaPair{big, small};
}

double eta(Branch i, double r, const Parameters& p) {
  const EtaPair e = eta_pair(r, p);
  return i == Branch::Eta1 ? e.eta1 : e.eta2;
}

double eta_midpoint(double r, const Parameters& p) {
  require_open(r, "eta_midpoint");
  return nm1(p) * (r - p.R) / (2.0 * std::sqrt(1.0 - r * r));
}

double zeta(Branch i, double r, const Parameters& p) {
  const double e = eta(i, r, p);
  return e / (static_cast<double>(p.k) * std::sqrt(1.0 - r * r));
}

}  // namespace imcf
