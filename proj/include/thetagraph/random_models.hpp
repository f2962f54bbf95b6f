#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>

#include "thetagraph/geometry.hpp"

namespace thetagraph {

/// Axis-parallel window [0, width] x [0, height].
struct Window {
  double width = 1.0;
  double height = 1.0;

  static Window square(double side) { return {side, side}; }
  double area() const { return width * height; }
  bool contains(const Point &p) const { return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height; }
  /// Throws std::invalid_argument unless both sides are positive and finite.
  void validate() const;
};

/// Identifies one random stream: repetition `stream_id` of experiment `master_seed`.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Deterministic generator for one (master_seed, stream_id) pair.
class StreamRng {
public:
  explicit StreamRng(SeedSpec seed);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  std::uint64_t bits() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// Poisson(mean) variate: sequential inversion below mean 30, transformed
/// rejection (PTRS) above.
std::uint64_t sample_poisson_count(double mean, StreamRng &rng);

/// n points i.i.d. uniform in the window, pairwise distinct.
PointSet sample_iud(std::size_t n, const Window &window, SeedSpec seed);

/// Homogeneous Poisson process of the given intensity restricted to the window.
PointSet sample_poisson(double intensity, const Window &window, SeedSpec seed);

/// CSV with header `x,y`, full double precision.
void write_points_csv(std::ostream &out, const PointSet &points);
PointSet read_points_csv(std::istream &in);

} // namespace thetagraph
