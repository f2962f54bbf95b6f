#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "thetagraph/geometry.hpp"

namespace thetagraph {

/// Construction strategy. Theta graphs support kNaive and kSweep; Yao graphs
/// support kNaive and kGrid.
enum class BuildMethod { kNaive, kSweep, kGrid };

/// A directed theta or Yao graph: at most one edge per (source, cone), each
/// flagged mutual when the reverse edge was also chosen.
class ThetaGraph {
public:
  ThetaGraph() = default;

  /// Takes the chosen edges in any order; sorts them by (source, cone) and
  /// computes mutuality. Throws GeometryError on a second edge for the same
  /// (source, cone) or on an out-of-range endpoint.
  ThetaGraph(std::size_t n, int k, std::vector<DirectedEdge> edges);

  std::size_t n() const { return n_; }
  int k() const { return k_; }
  const std::vector<DirectedEdge> &edges() const { return edges_; }
  bool mutual(std::size_t edge_index) const { return mutual_[edge_index] != 0; }

  /// Edge chosen by `source` in `cone`, if any.
  std::optional<DirectedEdge> edge(PointIndex source, int cone) const;

  /// Undirected degree of every point; mutual pairs count once.
  std::vector<std::size_t> degrees() const;

private:
  std::size_t n_ = 0;
  int k_ = 0;
  std::vector<DirectedEdge> edges_;
  std::vector<char> mutual_;
  // First edge of each source in edges_, size n+1.
  std::vector<std::size_t> offsets_;
};

struct EdgeStats {
  std::size_t n = 0;          ///< vertices the degree figures are taken over
  std::size_t directed = 0;   ///< D
  std::size_t mutual = 0;     ///< M, directed edges whose reverse is present
  std::size_t undirected = 0; ///< E = D - M/2
  double avg_degree = 0.0;
  std::map<std::size_t, std::size_t> degree_histogram;
};

/// The central square [2*margin, side - 2*margin]^2 of the window [0, side]^2.
class CoreRegion {
public:
  CoreRegion(double side, double margin);

  /// Margin t = sqrt(c*k*ln n) measured in a window of area n, rescaled to a
  /// window of the given side.
  static CoreRegion from_constant(double side, std::size_t n, int k, double c);

  double side() const { return side_; }
  double margin() const { return margin_; }
  double lo() const { return 2.0 * margin_; }
  double hi() const { return side_ - 2.0 * margin_; }
  bool contains(const Point &p) const;

private:
  double side_;
  double margin_;
};

enum class CoreMode {
  /// D, M, E over edges with at least one endpoint in the core; avg = 2E/|core|.
  kEndpointInCore,
  /// D, M, E as above; avg_degree and histogram are the full-graph degrees of
  /// the points inside the core.
  kRestrictedWindow,
};

ThetaGraph build_theta(const PointSet &points, int k, BuildMethod method = BuildMethod::kSweep);
ThetaGraph build_yao(const PointSet &points, int k, BuildMethod method = BuildMethod::kGrid);

EdgeStats edge_stats(const ThetaGraph &g);
EdgeStats core_stats(const ThetaGraph &g, const PointSet &points, const CoreRegion &core, CoreMode mode);

/// CSV dump: header `source,target,cone,height,mutual`, one line per directed edge.
void write_edges_csv(std::ostream &out, const ThetaGraph &g);

/// Throws GeometryError unless every point is finite and no two coincide.
void check_distinct(const PointSet &points);

} // namespace thetagraph
