#include "thetagraph/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace thetagraph {

namespace {

constexpr double kInversionLimit = 30.0;

std::seed_seq seed_sequence(SeedSpec seed) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(seed.master_seed), hi(seed.master_seed), lo(seed.stream_id), hi(seed.stream_id)};
}

std::uint64_t poisson_inversion(double mean, StreamRng &rng) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cumulative = p;
  std::uint64_t count = 0;
  while (u >= cumulative) {
    ++count;
    p *= mean / static_cast<double>(count);
    const double next = cumulative + p;
    if (next == cumulative) {
      break;
    }
    cumulative = next;
  }
  return count;
}

// Hörmann, "The transformed rejection method for generating Poisson random
// variables" (1993), algorithm PTRS.
std::uint64_t poisson_ptrs(double mean, StreamRng &rng) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * log_mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

Point uniform_point(const Window &window, StreamRng &rng) {
  const double x = rng.uniform() * window.width;
  const double y = rng.uniform() * window.height;
  return {x, y};
}

PointSet uniform_points(std::size_t n, const Window &window, StreamRng &rng) {
  PointSet points(n);
  for (Point &p : points) {
    p = uniform_point(window, rng);
  }
  // Coincident draws are redrawn; the later index is replaced.
  for (;;) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return std::tie(points[l].x, points[l].y, l) < std::tie(points[r].x, points[r].y, r);
    });
    bool redrawn = false;
    for (std::size_t i = 1; i < n; ++i) {
      if (points[order[i]] == points[order[i - 1]]) {
        points[std::max(order[i], order[i - 1])] = uniform_point(window, rng);
        redrawn = true;
      }
    }
    if (!redrawn) {
      return points;
    }
  }
}

} // namespace

void Window::validate() const {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw std::invalid_argument("window sides must be positive and finite");
  }
}

StreamRng::StreamRng(SeedSpec seed) {
  auto seq = seed_sequence(seed);
  engine_.seed(seq);
}

double StreamRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t sample_poisson_count(double mean, StreamRng &rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  return mean < kInversionLimit ? poisson_inversion(mean, rng) : poisson_ptrs(mean, rng);
}

PointSet sample_iud(std::size_t n, const Window &window, SeedSpec seed) {
  window.validate();
  StreamRng rng(seed);
  return uniform_points(n, window, rng);
}

PointSet sample_poisson(double intensity, const Window &window, SeedSpec seed) {
  window.validate();
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw std::invalid_argument("intensity must be positive");
  }
  StreamRng rng(seed);
  const std::uint64_t count = sample_poisson_count(intensity * window.area(), rng);
  return uniform_points(static_cast<std::size_t>(count), window, rng);
}

void write_points_csv(std::ostream &out, const PointSet &points) {
  const auto precision = out.precision();
  out << "x,y\n" << std::setprecision(17);
  for (const Point &p : points) {
    out << p.x << ',' << p.y << '\n';
  }
  out.precision(precision);
}

PointSet read_points_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y", 0) != 0) {
    throw std::invalid_argument("point CSV must start with header x,y");
  }
  PointSet points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("point CSV line " + std::to_string(line_no) + ": expected x,y");
    }
    try {
      const double x = std::stod(line.substr(0, comma));
      const double y = std::stod(line.substr(comma + 1));
      points.push_back({x, y});
    } catch (const std::logic_error &) {
      throw std::invalid_argument("point CSV line " + std::to_string(line_no) + ": bad number");
    }
    check_finite(points.back());
  }
  return points;
}

} // namespace thetagraph
