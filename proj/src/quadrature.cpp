#include "thetagraph/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thetagraph/geometry.hpp"

namespace thetagraph {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr unsigned kMaxDepth = 18;
constexpr int kMaxCutoffDoublings = 8;

// The integrands are probabilities or probability densities with total mass
// at most one, so a relative tolerance at or below abs_tol also meets abs_tol.
double panel_tolerance(const QuadratureConfig &cfg) { return std::min(cfg.rel_tol, cfg.abs_tol); }

} // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(truncation_mass > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (truncation_mass > abs_tol / 10.0) {
    throw std::invalid_argument("truncation_mass must be at most abs_tol/10");
  }
}

double erf(double x) { return std::erf(x); }

EvenIntegrandParams::EvenIntegrandParams(int k_in) : k(k_in), theta(2.0 * std::numbers::pi / k_in), alpha(0.0) {
  if (k < 4 || k % 2 != 0) {
    throw std::invalid_argument("even k >= 4 required");
  }
  alpha = std::cos(theta / 2.0) / (4.0 * std::sin(theta / 2.0));
}

double EvenIntegrandParams::conditional(double ell) const {
  if (ell <= 0.0) {
    return 1.0;
  }
  return std::sqrt(std::numbers::pi) / (ell * std::sqrt(2.0 * alpha)) * std::exp(-alpha * ell * ell / 2.0) *
         erf(ell * std::sqrt(alpha / 2.0));
}

double EvenIntegrandParams::density(double ell) const { return 2.0 * alpha * ell * std::exp(-alpha * ell * ell); }

OddIntegrandParams::OddIntegrandParams(int k_in) : k(k_in) {
  if (k < 5 || k % 2 == 0) {
    throw std::invalid_argument("odd k >= 5 required");
  }
  const double step = std::numbers::pi / k;
  a_coeff = 1.0 / std::sin(2.0 * step);
  b_coeff = std::cos(2.0 * step) / (2.0 * std::sin(3.0 * step) * std::cos(step));
  base_coeff = std::cos(step) / std::sin(step);
  cos2 = std::cos(2.0 * step);
}

double OddIntegrandParams::exponent(double ell, double r) const {
  const double s = (ell - r) * cos2 + ell;
  return a_coeff * r * r + b_coeff * s * s;
}

double OddIntegrandParams::density(double ell) const {
  return 2.0 * ell * base_coeff * std::exp(-ell * ell * base_coeff);
}

QuadratureResult integrate(const std::function<double(double)> &f, double a, double b, const QuadratureConfig &cfg) {
  QuadratureResult result;
  result.cutoff = b;
  if (a == b) {
    return result;
  }
  result.value = Kronrod::integrate(f, a, b, kMaxDepth, panel_tolerance(cfg), &result.error);
  return result;
}

QuadratureResult integrate_half_line(const std::function<double(double)> &f, double coefficient,
                                     const QuadratureConfig &cfg) {
  cfg.validate();
  if (!(coefficient > 0.0)) {
    throw std::invalid_argument("Gaussian envelope coefficient must be positive");
  }
  const double scale = 1.0 / std::sqrt(coefficient);
  double cutoff = std::sqrt(-std::log(cfg.truncation_mass) / coefficient);
  QuadratureResult tail;
  for (int attempt = 0;; ++attempt) {
    tail = integrate(f, cutoff, 2.0 * cutoff, cfg);
    if (std::abs(tail.value) < cfg.truncation_mass) {
      break;
    }
    if (attempt == kMaxCutoffDoublings) {
      throw std::runtime_error("integrand tail does not decay");
    }
    cutoff *= 2.0;
  }

  QuadratureResult result;
  result.cutoff = cutoff;
  for (double lo = 0.0; lo < cutoff; lo += scale) {
    const QuadratureResult panel = integrate(f, lo, std::min(lo + scale, cutoff), cfg);
    result.value += panel.value;
    result.error += panel.error;
  }
  result.error += std::abs(tail.value) + tail.error;
  return result;
}

QuadratureResult length_density_mass(int k, const QuadratureConfig &cfg) {
  if (k % 2 == 0) {
    const EvenIntegrandParams params(k);
    return integrate_half_line([&](double ell) { return params.density(ell); }, params.alpha, cfg);
  }
  const OddIntegrandParams params(k);
  return integrate_half_line([&](double ell) { return params.density(ell); }, params.base_coeff, cfg);
}

QuadratureResult p_even_numeric(int k, const QuadratureConfig &cfg) {
  const EvenIntegrandParams params(k);
  return integrate_half_line([&](double ell) { return params.density(ell) * params.conditional(ell); },
                             params.alpha, cfg);
}

QuadratureResult p_odd_numeric(int k, const QuadratureConfig &cfg) {
  const OddIntegrandParams params(k);
  double inner_error = 0.0;
  auto conditional = [&](double ell) {
    if (ell <= 0.0) {
      return 1.0;
    }
    const QuadratureResult inner =
        integrate([&](double r) { return std::exp(-params.exponent(ell, r)) / ell; }, 0.0, ell, cfg);
    inner_error = std::max(inner_error, inner.error);
    return inner.value;
  };
  QuadratureResult result = integrate_half_line(
      [&](double ell) { return params.density(ell) * conditional(ell); }, params.base_coeff, cfg);
  // The outer density integrates to one, so inner errors add at most their maximum.
  result.error += inner_error;
  return result;
}

double yao_overlap_area(int k, double t, double gamma) {
  const ConeGeometry geom(k);
  const double theta = geom.theta();
  if (!(t > 0.0) || gamma < 0.0 || gamma > theta) {
    throw std::invalid_argument("yao_overlap_area needs t > 0 and gamma in [0, theta]");
  }
  const Point w{t * std::cos(gamma), t * std::sin(gamma)};
  // Cone of w that holds u, i.e. the one containing direction pi + gamma,
  // taken as gamma approaches theta from below.
  const long j = k / 2 + ((k % 2 == 1 && gamma >= theta / 2.0) ? 1 : 0);

  std::vector<Point> region{{-2.0 * t, -2.0 * t}, {2.0 * t, -2.0 * t}, {2.0 * t, 2.0 * t}, {-2.0 * t, 2.0 * t}};
  auto keep_cone = [&](const Point &apex, long lower_turn) {
    const Point lower = unit_at_turn(lower_turn, k);
    const Point upper = unit_at_turn(lower_turn + 1, k);
    const Point n1{-lower.y, lower.x};
    const Point n2{upper.y, -upper.x};
    region = clip_half_plane(region, n1, dot(n1, apex));
    region = clip_half_plane(region, n2, dot(n2, apex));
  };
  keep_cone({0.0, 0.0}, 0);
  keep_cone(w, j);
  // For k >= 4 the cone intersection lies inside both radius-t disks, so the
  // sector overlap is exactly this polygon.
  return polygon_area(region);
}

QuadratureResult p_yao_numeric(int k, const QuadratureConfig &cfg, YaoInnerDomain domain) {
  if (k < 4) {
    throw std::invalid_argument("Yao mutual-edge integral needs k >= 4");
  }
  const double theta = 2.0 * std::numbers::pi / k;
  const double sin_theta = std::sin(theta);
  double inner_error = 0.0;

  auto displayed = [&](double t, double gamma) {
    return std::exp(-theta * t * t / 2.0 + t * t * std::sin(gamma) * std::sin(theta - gamma) / sin_theta);
  };
  auto inner = [&](double t) {
    QuadratureResult r;
    switch (domain) {
    case YaoInnerDomain::kNormalizedAngle: {
      auto f = [&](double gamma) { return std::exp(-theta * t * t / 2.0 + yao_overlap_area(k, t, gamma)) / theta; };
      if (k % 2 == 0) {
        r = integrate(f, 0.0, theta, cfg);
      } else {
        // The cone of w holding u switches at gamma = theta/2.
        const QuadratureResult left = integrate(f, 0.0, theta / 2.0, cfg);
        const QuadratureResult right = integrate(f, theta / 2.0, theta, cfg);
        r.value = left.value + right.value;
        r.error = left.error + right.error;
      }
      break;
    }
    case YaoInnerDomain::kLiteralAngle:
      r = integrate([&](double gamma) { return displayed(t, gamma); }, 0.0, theta, cfg);
      break;
    case YaoInnerDomain::kLiteralLength:
      r = integrate([&](double gamma) { return displayed(t, gamma); }, 0.0, t, cfg);
      break;
    }
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };

  QuadratureResult result;
  try {
    result = integrate_half_line(
        [&](double t) {
          if (t <= 0.0) {
            return 0.0;
          }
          return theta * t * std::exp(-theta * t * t / 2.0) * inner(t);
        },
        theta / 2.0, cfg);
  } catch (const std::runtime_error &) {
    throw std::runtime_error("integral interpretation failure");
  }
  result.error += inner_error;
  if (!std::isfinite(result.value) || !(result.value > 0.0) || !(result.value < 1.0)) {
    throw std::runtime_error("integral interpretation failure");
  }
  return result;
}

} // namespace thetagraph
