#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "thetagraph/graph.hpp"
#include "thetagraph/random_models.hpp"

using namespace thetagraph;

namespace {

PointSet random_points(std::size_t n, std::uint64_t seed, double side = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, side);
  PointSet pts(n);
  for (auto &p : pts) {
    p = {coord(rng), coord(rng)};
  }
  return pts;
}

void expect_matches_oracle(const ThetaGraph &g, const PointSet &pts, int k, bool yao) {
  const auto expected = oracle::all_pairs(pts, k, yao);
  const auto actual = oracle::edge_map(g);
  ASSERT_EQ(actual.size(), expected.size());
  for (const auto &[slot, choice] : expected) {
    auto it = actual.find(slot);
    ASSERT_NE(it, actual.end()) << "missing edge from " << slot.first << " cone " << slot.second;
    EXPECT_EQ(it->second, choice.target) << "source " << slot.first << " cone " << slot.second;
  }
}

} // namespace

TEST(BuildTheta, TwoPoints) {
  const PointSet pts{{0, 0}, {1, 0}};
  const ThetaGraph g = build_theta(pts, 4);
  const EdgeStats s = edge_stats(g);
  EXPECT_EQ(s.directed, 2u);
  EXPECT_EQ(s.mutual, 2u);
  EXPECT_EQ(s.undirected, 1u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 1.0);
  ASSERT_TRUE(g.edge(0, 1).has_value());
  EXPECT_EQ(g.edge(0, 1)->target, 1u);
  EXPECT_NEAR(g.edge(0, 1)->height, std::sqrt(2.0) / 2, 1e-15);
}

TEST(BuildTheta, CollinearPathHasNMinusOneEdges) {
  PointSet pts;
  for (int i = 0; i < 4; ++i) {
    pts.push_back({static_cast<double>(i), 0.0});
  }
  for (auto method : {BuildMethod::kNaive, BuildMethod::kSweep}) {
    EXPECT_EQ(edge_stats(build_theta(pts, 6, method)).undirected, 3u);
  }
  EXPECT_EQ(edge_stats(build_yao(pts, 6)).undirected, 3u);
}

TEST(BuildTheta, CollinearRandomLines) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double angle = u(rng) * 6.283185307179586;
    const std::size_t n = 2 + trial * 3;
    PointSet pts;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = u(rng) * 10.0;
      pts.push_back({1.0 + s * std::cos(angle), 2.0 + s * std::sin(angle)});
    }
    for (int k = 4; k <= 9; ++k) {
      EXPECT_EQ(edge_stats(build_theta(pts, k, BuildMethod::kSweep)).undirected, n - 1);
      EXPECT_EQ(edge_stats(build_yao(pts, k, BuildMethod::kGrid)).undirected, n - 1);
    }
  }
}

TEST(BuildTheta, MatchesBruteForceOracle) {
  const PointSet pts = random_points(20, 99);
  expect_matches_oracle(build_theta(pts, 5, BuildMethod::kSweep), pts, 5, false);
  expect_matches_oracle(build_theta(pts, 5, BuildMethod::kNaive), pts, 5, false);
}

TEST(BuildYao, MatchesBruteForceOracle) {
  const PointSet pts = random_points(20, 101);
  expect_matches_oracle(build_yao(pts, 6, BuildMethod::kGrid), pts, 6, true);
  expect_matches_oracle(build_yao(pts, 6, BuildMethod::kNaive), pts, 6, true);
}

TEST(BuildYao, DiffersFromThetaOnWitness) {
  // In cone 1 of the origin (k=4, axis at 45 degrees), b is nearer but a has
  // the smaller projection on the axis.
  const PointSet pts{{0, 0}, {0.9, 0.02}, {0.5, 0.5}};
  EXPECT_LT(norm(pts[2]), norm(pts[1]));
  const ConeGeometry geom(4);
  EXPECT_LT(projection_distance(pts[0], pts[1], 1, geom), projection_distance(pts[0], pts[2], 1, geom));
  EXPECT_EQ(build_theta(pts, 4).edge(0, 1)->target, 1u);
  EXPECT_EQ(build_yao(pts, 4).edge(0, 1)->target, 2u);
}

TEST(BuildTheta, UndirectedCountMatchesDedup) {
  const PointSet pts = random_points(50, 3);
  for (int k : {4, 5, 8}) {
    const ThetaGraph g = build_theta(pts, k);
    EXPECT_EQ(edge_stats(g).undirected, oracle::undirected_pairs(g));
    const ThetaGraph y = build_yao(pts, k);
    EXPECT_EQ(edge_stats(y).undirected, oracle::undirected_pairs(y));
  }
}

TEST(BuildTheta, SweepEqualsNaive) {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t n = 2 + rng() % 199;
    const int k = 4 + static_cast<int>(rng() % 9);
    const PointSet pts = random_points(n, rng());
    EXPECT_EQ(build_theta(pts, k, BuildMethod::kSweep).edges(), build_theta(pts, k, BuildMethod::kNaive).edges())
        << "instance " << instance;
    EXPECT_EQ(build_yao(pts, k, BuildMethod::kGrid).edges(), build_yao(pts, k, BuildMethod::kNaive).edges())
        << "instance " << instance;
  }
}

TEST(BuildTheta, SweepEqualsNaiveOnLattice) {
  // Many equal projections. k = 8 is left out: its diagonal boundary rays
  // pass through lattice points but are not exactly representable.
  PointSet pts;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      pts.push_back({static_cast<double>(i), static_cast<double>(j)});
    }
  }
  for (int k : {2, 3, 4, 5, 6, 7, 9, 10, 11, 12}) {
    EXPECT_EQ(build_theta(pts, k, BuildMethod::kSweep).edges(), build_theta(pts, k, BuildMethod::kNaive).edges())
        << "k=" << k;
    EXPECT_EQ(build_yao(pts, k, BuildMethod::kGrid).edges(), build_yao(pts, k, BuildMethod::kNaive).edges())
        << "k=" << k;
  }
}

TEST(BuildTheta, TieOnVerticalAxisPicksNearest) {
  // k=6, cone 2 has its axis straight up; both candidates project to height 1.
  const PointSet pts{{0, 0}, {0.3, 1.0}, {-0.1, 1.0}};
  for (auto method : {BuildMethod::kNaive, BuildMethod::kSweep}) {
    const auto e = build_theta(pts, 6, method).edge(0, 2);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->target, 2u);
  }
}

TEST(GraphInvariants, CountsAndSymmetry) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 150;
    const int k = 4 + static_cast<int>(rng() % 10);
    const PointSet pts = random_points(n, rng());
    for (const ThetaGraph &g : {build_theta(pts, k), build_yao(pts, k)}) {
      const EdgeStats s = edge_stats(g);
      EXPECT_EQ(s.mutual % 2, 0u);
      EXPECT_EQ(s.undirected, s.directed - s.mutual / 2);
      EXPECT_LE(s.directed, static_cast<std::size_t>(k) * n);
      for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const DirectedEdge &edge = g.edges()[e];
        const int back = cone_index(pts[edge.target], pts[edge.source], ConeGeometry(k));
        const auto reverse = g.edge(edge.target, back);
        EXPECT_EQ(g.mutual(e), reverse.has_value() && reverse->target == edge.source);
      }
      std::size_t degree_sum = 0;
      for (auto d : g.degrees()) {
        degree_sum += d;
      }
      EXPECT_EQ(degree_sum, 2 * s.undirected);
    }
  }
}

TEST(GraphInvariants, TranslationAndScaling) {
  const PointSet pts = random_points(120, 8);
  PointSet moved = pts;
  for (auto &p : moved) {
    p = {p.x * 4.0 + 3.0, p.y * 4.0 - 7.0};
  }
  for (int k : {4, 7, 10}) {
    const auto a = oracle::edge_map(build_theta(pts, k));
    const auto b = oracle::edge_map(build_theta(moved, k));
    EXPECT_EQ(a, b);
    EXPECT_EQ(oracle::edge_map(build_yao(pts, k)), oracle::edge_map(build_yao(moved, k)));
  }
}

TEST(CoreStats, WholeWindowCoreEqualsEdgeStats) {
  const PointSet pts = random_points(200, 12);
  const ThetaGraph g = build_theta(pts, 6);
  const CoreRegion core(1.0, 0.0);
  const EdgeStats all = edge_stats(g);
  for (auto mode : {CoreMode::kEndpointInCore, CoreMode::kRestrictedWindow}) {
    const EdgeStats s = core_stats(g, pts, core, mode);
    EXPECT_EQ(s.directed, all.directed);
    EXPECT_EQ(s.mutual, all.mutual);
    EXPECT_EQ(s.undirected, all.undirected);
    EXPECT_DOUBLE_EQ(s.avg_degree, all.avg_degree);
  }
}

TEST(CoreStats, MatchesFilterOracle) {
  const PointSet pts = random_points(300, 21);
  const ThetaGraph g = build_theta(pts, 5);
  const CoreRegion core(1.0, 1.0 / 6.0);
  std::size_t directed = 0;
  std::size_t mutual = 0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto &edge = g.edges()[e];
    if (core.contains(pts[edge.source]) || core.contains(pts[edge.target])) {
      ++directed;
      mutual += g.mutual(e) ? 1 : 0;
    }
  }
  const auto degrees = g.degrees();
  double sum = 0.0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (core.contains(pts[i])) {
      sum += static_cast<double>(degrees[i]);
      ++inside;
    }
  }
  const EdgeStats s = core_stats(g, pts, core, CoreMode::kRestrictedWindow);
  EXPECT_EQ(s.directed, directed);
  EXPECT_EQ(s.mutual, mutual);
  EXPECT_EQ(s.undirected, directed - mutual / 2);
  EXPECT_EQ(s.n, inside);
  EXPECT_DOUBLE_EQ(s.avg_degree, sum / static_cast<double>(inside));
  const EdgeStats e = core_stats(g, pts, core, CoreMode::kEndpointInCore);
  EXPECT_DOUBLE_EQ(e.avg_degree, 2.0 * static_cast<double>(e.undirected) / static_cast<double>(inside));
}

TEST(CoreStats, EmptyCoreRejected) {
  EXPECT_THROW(CoreRegion(1.0, 0.3), std::invalid_argument);
}

TEST(BuildErrors, DuplicatesAndSmallK) {
  const PointSet dup{{0, 0}, {1, 1}, {0, 0}};
  EXPECT_THROW(build_theta(dup, 4), GeometryError);
  EXPECT_THROW(build_yao(dup, 4), GeometryError);
  const PointSet ok{{0, 0}, {1, 1}};
  EXPECT_THROW(build_theta(ok, 1), GeometryError);
  EXPECT_THROW(build_theta(ok, 4, BuildMethod::kGrid), std::invalid_argument);
  EXPECT_NO_THROW(build_theta(PointSet{}, 4));
}

TEST(EdgesCsv, HeaderAndRows) {
  const PointSet pts{{0, 0}, {1, 0}};
  std::ostringstream out;
  write_edges_csv(out, build_theta(pts, 4));
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "source,target,cone,height,mutual");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}
