#pragma once

// Closed-form algebra of a Muenzner-normalized isoparametric function r on
// the unit sphere S^n:
//
//   |grad r|^2 = alpha(r) = k^2 (1 - r^2)
//   Laplace r  = beta(r)  = (m2 - m1)/2 k^2 - k (n + k - 1) r
//
// together with the quantities that organize the (r, psi) phase plane of the
// translating-soliton profile equation: the quadratic A(x, r) whose roots are
// the nullclines eta_1 <= eta_2, its discriminant B(r), and the critical
// abscissas a < R < b where B changes sign.

namespace imcf {

/// Absolute tolerance for closed-form algebraic identities.
inline constexpr double kAbsTol = 1e-10;

/// A validated isoparametric datum. Only validate_parameters() builds one.
struct Parameters {
  int n = 0;   ///< sphere dimension
  int k = 0;   ///< number of distinct principal curvatures
  int m1 = 0;  ///< multiplicity of the largest principal curvature
  int m2 = 0;  ///< multiplicity of the smallest principal curvature
  double R = 0.0;
};

/// Roots of B: the band (a, b) is where the nullclines do not exist.
struct Band {
  double a = 0.0;
  double b = 0.0;

  bool contains_open(double r) const { return r > a && r < b; }
};

enum class Branch : int { Eta1 = 1, Eta2 = 2 };

/// Rejects tuples that violate Muenzner's constraints. Throws imcf::Error with
/// BadK, UnequalMultiplicities, DimensionMismatch or ROutOfRange.
Parameters validate_parameters(int n, int k, int m1, int m2);

double alpha(double r, const Parameters& p);
double alpha_prime(double r, const Parameters& p);
double beta(double r, const Parameters& p);

/// ((n-1)^2+4) r^2 - 2 (n-1)^2 R r + (n-1)^2 R^2 - 4, for r in (-1, 1).
double discriminant_B(double r, const Parameters& p);

/// sqrt(1-r^2) x^2 - (n-1)(r-R) x + sqrt(1-r^2), for r in (-1, 1).
double quadratic_A(double x, double r, const Parameters& p);

Band band_bounds(const Parameters& p);

/// Root of A(., r). Defined on (-1, a] U [b, 1); throws BandInterior inside
/// (a, b) and DomainError for |r| >= 1. At r = a or r = b both branches
/// coincide.
double eta(Branch i, double r, const Parameters& p);

/// Both roots at once, ordered eta_1 <= eta_2.
struct EtaPair {
  double eta1;
  double eta2;
};
EtaPair eta_pair(double r, const Parameters& p);

/// Midpoint of the nullclines, (n-1)(r-R) / (2 sqrt(1-r^2)); defined on all
/// of (-1, 1).
double eta_midpoint(double r, const Parameters& p);

/// eta_i(r) / (k sqrt(1-r^2)): the nullclines seen in the V' plane.
double zeta(Branch i, double r, const Parameters& p);

}  // namespace imcf
