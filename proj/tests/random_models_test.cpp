#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "thetagraph/random_models.hpp"

using namespace thetagraph;

TEST(Iud, EmptyAndDeterministic) {
  EXPECT_TRUE(sample_iud(0, Window::square(1.0), {1, 0}).empty());
  const PointSet a = sample_iud(500, Window{2.0, 3.0}, {42, 7});
  const PointSet b = sample_iud(500, Window{2.0, 3.0}, {42, 7});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample_iud(500, Window{2.0, 3.0}, {42, 8}));
  EXPECT_NE(a, sample_iud(500, Window{2.0, 3.0}, {43, 7}));
  for (const auto &p : a) {
    EXPECT_TRUE((Window{2.0, 3.0}).contains(p));
  }
  std::set<std::pair<double, double>> distinct;
  for (const auto &p : a) {
    distinct.insert({p.x, p.y});
  }
  EXPECT_EQ(distinct.size(), a.size());
}

TEST(Iud, MeanCoordinateWithinClt) {
  const std::size_t n = 20000;
  const PointSet pts = sample_iud(n, Window::square(1.0), {9, 1});
  double sx = 0.0;
  double sy = 0.0;
  for (const auto &p : pts) {
    sx += p.x;
    sy += p.y;
  }
  // sd of the mean is sqrt(1/12/n); allow 5 of them.
  const double bound = 5.0 * std::sqrt(1.0 / 12.0 / n);
  EXPECT_NEAR(sx / n, 0.5, bound);
  EXPECT_NEAR(sy / n, 0.5, bound);
}

TEST(Uniform, RangeAndStreams) {
  StreamRng a({5, 1});
  StreamRng b({5, 2});
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    differs |= u != b.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(PoissonCount, MeanAndVariance) {
  for (double mean : {0.5, 4.0, 29.0, 31.0, 250.0, 1e4}) {
    StreamRng rng({17, static_cast<std::uint64_t>(mean * 10)});
    const int reps = 20000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double x = static_cast<double>(sample_poisson_count(mean, rng));
      s += x;
      s2 += x * x;
    }
    const double m = s / reps;
    const double var = s2 / reps - m * m;
    EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / reps)) << "mean=" << mean;
    EXPECT_NEAR(var / mean, 1.0, 0.06) << "mean=" << mean;
  }
  StreamRng rng({1, 1});
  EXPECT_EQ(sample_poisson_count(0.0, rng), 0u);
}

TEST(PoissonProcess, CountMatchesArea) {
  const Window window = Window::square(100.0);
  const int reps = 1000;
  double total = 0.0;
  for (int r = 0; r < reps; ++r) {
    const PointSet pts = sample_poisson(1.0, window, {3, static_cast<std::uint64_t>(r)});
    total += static_cast<double>(pts.size());
    if (r < 5) {
      for (const auto &p : pts) {
        ASSERT_TRUE(window.contains(p));
      }
    }
  }
  // sd of the mean count is sqrt(1e4 / 1e3).
  EXPECT_NEAR(total / reps, 1e4, 4.0 * std::sqrt(1e4 / reps));
}

TEST(PoissonProcess, TinyWindowIsUsuallyEmpty) {
  EXPECT_TRUE(sample_poisson(1.0, Window::square(1e-9), {1, 1}).empty());
}

TEST(PoissonProcess, EmptyUnitRegionFraction) {
  // Count windows of area 1 (at unit intensity) that are empty; expect e^-1.
  const int reps = 20000;
  int empty = 0;
  for (int r = 0; r < reps; ++r) {
    empty += sample_poisson(1.0, Window{2.0, 0.5}, {11, static_cast<std::uint64_t>(r)}).empty() ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(empty) / reps, std::exp(-1.0), 0.02);
}

TEST(WindowValidate, Rejects) {
  EXPECT_THROW((Window{0.0, 1.0}).validate(), std::invalid_argument);
  EXPECT_THROW((Window{1.0, -2.0}).validate(), std::invalid_argument);
  EXPECT_THROW(sample_poisson(-1.0, Window::square(1.0), {1, 1}), std::invalid_argument);
}

TEST(PointsCsv, RoundTrip) {
  const PointSet pts = sample_iud(50, Window::square(7.0), {2, 2});
  std::stringstream buffer;
  write_points_csv(buffer, pts);
  EXPECT_EQ(read_points_csv(buffer), pts);

  std::stringstream bad("x,y\n1.0,abc\n");
  EXPECT_THROW(read_points_csv(bad), std::invalid_argument);
  std::stringstream header("a,b\n");
  EXPECT_THROW(read_points_csv(header), std::invalid_argument);
}
