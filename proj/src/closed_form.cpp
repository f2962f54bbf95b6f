#include "thetagraph/closed_form.hpp"

#include <cmath>
#include <numbers>

#include "thetagraph/geometry.hpp"

namespace thetagraph {

namespace {

// Every trigonometric term is a multiple of pi/k; build the argument here only.
class PiOverK {
public:
  explicit PiOverK(int k) : step_(std::numbers::pi / k) {}
  double cos(int m) const { return std::cos(m * step_); }
  double sin(int m) const { return std::sin(m * step_); }

private:
  double step_;
};

void require_odd(int k) {
  if (k < 5 || k % 2 == 0) {
    throw GeometryError("odd k >= 5 required");
  }
}

} // namespace

double p_even() { return std::numbers::pi * std::numbers::sqrt3 / 9.0; }

OddClosedFormParts odd_parts(int k) {
  require_odd(k);
  const PiOverK t(k);
  OddClosedFormParts parts;
  parts.gamma = 4.0 + 11.0 * t.cos(2) + t.cos(6);
  const double numerator = (27.0 * t.cos(1) + 17.0 * t.cos(3) + 3.0 * t.cos(5) + t.cos(7)) / t.sin(1);
  parts.alpha = std::sqrt(numerator / parts.gamma);
  parts.beta = std::sqrt(18.0 * t.sin(2) + 18.0 * t.sin(4) + 11.0 * t.sin(6) + t.sin(8) + t.sin(10));
  return parts;
}

double p_odd(int k) {
  const OddClosedFormParts parts = odd_parts(k);
  const PiOverK t(k);
  const double ab = parts.alpha * parts.beta;
  const double c13 = t.cos(1) + t.cos(3);
  const double s2 = t.sin(2);
  const double angles = std::atan(2.0 * c13 * c13 / ab) + std::atan(4.0 * (2.0 * t.cos(2) + s2 * s2) / ab);
  const double cot = t.cos(1) / t.sin(1);
  return 2.0 * angles * cot * parts.beta / (parts.gamma * parts.alpha);
}

double p_odd_limit() { return 2.0 * std::atan(1.0 / 3.0); }

ClosedFormValue degree(int k) {
  if (k < 4) {
    throw GeometryError("degree formula needs k >= 4");
  }
  const double p = k % 2 == 0 ? p_even() : p_odd(k);
  return {k, p, (2.0 - p) * k};
}

} // namespace thetagraph
