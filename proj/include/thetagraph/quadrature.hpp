#pragma once

#include <functional>

namespace thetagraph {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Probability mass allowed beyond the truncation point of [0, inf).
  double truncation_mass = 1e-12;

  /// Throws std::invalid_argument unless tolerances are positive and
  /// truncation_mass <= abs_tol / 10.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< quadrature error estimate plus the neglected tail
  double cutoff = 0.0; ///< upper limit used for the semi-infinite outer integral
};

/// Even k: T is the isosceles triangle cut off at w, base length ell, apex
/// angle theta = 2pi/k; the reflected triangle minus T has area
/// alpha (r^2 + (ell - r)^2).
struct EvenIntegrandParams {
  explicit EvenIntegrandParams(int k);

  int k;
  double theta;
  double alpha; ///< cos(theta/2) / (4 sin(theta/2))

  /// Pr{mutual | ell}, the erf closed form of the inner integral.
  double conditional(double ell) const;
  /// Density of ell: 2 alpha ell exp(-alpha ell^2).
  double density(double ell) const;
};

/// Odd k: base length 2*ell, w at distance r from the cone axis.
struct OddIntegrandParams {
  explicit OddIntegrandParams(int k);

  int k;
  double a_coeff;    ///< 1 / sin(2pi/k)
  double b_coeff;    ///< cos(2pi/k) / (2 sin(3pi/k) cos(pi/k))
  double base_coeff; ///< cot(pi/k), area of T per ell^2
  double cos2;       ///< cos(2pi/k)

  /// A + B: area that must be empty for the edge to be mutual.
  double exponent(double ell, double r) const;
  /// Density of ell: 2 ell cot(pi/k) exp(-ell^2 cot(pi/k)).
  double density(double ell) const;
};

/// Gauss error function (2/sqrt(pi)) * integral_0^x exp(-z^2) dz.
double erf(double x);

/// Adaptive Gauss-Kronrod over [a, b].
QuadratureResult integrate(const std::function<double(double)> &f, double a, double b, const QuadratureConfig &cfg);

/// Integral over [0, inf) of an integrand bounded by C*exp(-coefficient*x^2)
/// times a polynomial. Truncates where the Gaussian tail drops below
/// truncation_mass, checks [L, 2L], and splits panels at 1/sqrt(coefficient).
QuadratureResult integrate_half_line(const std::function<double(double)> &f, double coefficient,
                                     const QuadratureConfig &cfg);

/// Integral of the theta-graph edge-length density for this k's parity; 1 up to quadrature error.
QuadratureResult length_density_mass(int k, const QuadratureConfig &cfg);

/// p_k for even k >= 4 from the outer integral of density times the erf form.
QuadratureResult p_even_numeric(int k, const QuadratureConfig &cfg = {});

/// p_k for odd k >= 5 from the nested integral of exp(-A-B).
QuadratureResult p_odd_numeric(int k, const QuadratureConfig &cfg = {});

/// Readings of the angular inner integral of the Yao mutual-edge formula.
enum class YaoInnerDomain {
  /// gamma uniform on [0, theta] with density 1/theta; the overlap of the two
  /// sectors is computed geometrically so odd k is covered too.
  kNormalizedAngle,
  /// gamma over [0, theta] without the 1/theta density, displayed overlap term.
  kLiteralAngle,
  /// gamma over [0, t] as printed, displayed overlap term.
  kLiteralLength,
};

/// Area shared by the radius-t sector of u (cone [0, theta)) and the radius-t
/// sector of w = t(cos gamma, sin gamma) in the cone of w containing u.
double yao_overlap_area(int k, double t, double gamma);

/// Probability that a directed Yao edge is mutual, k >= 4.
QuadratureResult p_yao_numeric(int k, const QuadratureConfig &cfg = {},
                               YaoInnerDomain domain = YaoInnerDomain::kNormalizedAngle);

} // namespace thetagraph
