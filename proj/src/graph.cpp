#include "thetagraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace thetagraph {

// ---------------------------------------------------------------------------
// ThetaGraph

ThetaGraph::ThetaGraph(std::size_t n, int k, std::vector<DirectedEdge> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (k < 2) {
    throw GeometryError("cone count k must be at least 2");
  }
  std::sort(edges_.begin(), edges_.end(), [](const DirectedEdge &l, const DirectedEdge &r) {
    return std::tie(l.source, l.cone) < std::tie(r.source, r.cone);
  });
  offsets_.assign(n_ + 1, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const DirectedEdge &edge = edges_[e];
    if (edge.source >= n_ || edge.target >= n_ || edge.source == edge.target) {
      throw GeometryError("edge endpoint out of range");
    }
    if (edge.cone < 1 || edge.cone > k_) {
      throw GeometryError("edge cone out of range");
    }
    if (e > 0 && edges_[e - 1].source == edge.source && edges_[e - 1].cone == edge.cone) {
      throw GeometryError("two edges for one (source, cone)");
    }
    ++offsets_[edge.source + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

  mutual_.assign(edges_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const PointIndex u = edges_[e].source;
    const PointIndex w = edges_[e].target;
    for (std::size_t f = offsets_[w]; f < offsets_[w + 1]; ++f) {
      if (edges_[f].target == u) {
        mutual_[e] = 1;
        break;
      }
    }
  }
}

std::optional<DirectedEdge> ThetaGraph::edge(PointIndex source, int cone) const {
  if (source >= n_) {
    return std::nullopt;
  }
  for (std::size_t e = offsets_[source]; e < offsets_[source + 1]; ++e) {
    if (edges_[e].cone == cone) {
      return edges_[e];
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> ThetaGraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    ++deg[edges_[e].source];
    if (!mutual_[e]) {
      ++deg[edges_[e].target];
    }
  }
  return deg;
}

// ---------------------------------------------------------------------------
// Core region

CoreRegion::CoreRegion(double side, double margin) : side_(side), margin_(margin) {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw GeometryError("core window side must be positive");
  }
  if (!(margin >= 0.0) || !(2.0 * margin < side / 2.0)) {
    throw GeometryError("empty core: need 0 <= 2*margin < side/2");
  }
}

CoreRegion CoreRegion::from_constant(double side, std::size_t n, int k, double c) {
  if (n < 2 || k < 1 || !(c > 0.0)) {
    throw GeometryError("core margin needs n >= 2, k >= 1, c > 0");
  }
  const double nn = static_cast<double>(n);
  const double t = std::sqrt(c * k * std::log(nn));
  return CoreRegion(side, t * side / std::sqrt(nn));
}

bool CoreRegion::contains(const Point &p) const {
  return p.x >= lo() && p.x <= hi() && p.y >= lo() && p.y <= hi();
}

// ---------------------------------------------------------------------------
// Construction

void check_distinct(const PointSet &points) {
  for (const Point &p : points) {
    check_finite(p);
  }
  std::vector<PointIndex> order(points.size());
  std::iota(order.begin(), order.end(), PointIndex{0});
  std::sort(order.begin(), order.end(), [&](PointIndex l, PointIndex r) {
    return std::tie(points[l].x, points[l].y) < std::tie(points[r].x, points[r].y);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      throw GeometryError("duplicate points");
    }
  }
}

namespace {

double dist2(const Point &u, const Point &w) {
  const Point d = w - u;
  return dot(d, d);
}

struct Candidate {
  PointIndex target = 0;
  double key = 0.0;
  double d2 = 0.0;
  bool found = false;

  // Lexicographic on (key, squared distance, index).
  bool improves(double k2, double dd, PointIndex t) const {
    return !found || std::tie(k2, dd, t) < std::tie(key, d2, target);
  }
};

enum class Nearness { kProjection, kEuclidean };

std::vector<DirectedEdge> naive_edges(const PointSet &points, const ConeGeometry &geom, Nearness nearness) {
  const int k = geom.k();
  std::vector<Point> axes(k);
  for (int i = 1; i <= k; ++i) {
    axes[i - 1] = geom.axis(i);
  }
  std::vector<DirectedEdge> edges;
  std::vector<Candidate> best(k);
  for (PointIndex u = 0; u < points.size(); ++u) {
    std::fill(best.begin(), best.end(), Candidate{});
    for (PointIndex w = 0; w < points.size(); ++w) {
      if (w == u) {
        continue;
      }
      const int i = cone_index(points[u], points[w], geom);
      const double dd = dist2(points[u], points[w]);
      const double key = nearness == Nearness::kProjection ? dot(points[w] - points[u], axes[i - 1]) : dd;
      if (best[i - 1].improves(key, dd, w)) {
        best[i - 1] = Candidate{w, key, dd, true};
      }
    }
    for (int i = 1; i <= k; ++i) {
      const Candidate &c = best[i - 1];
      if (c.found) {
        const double height = nearness == Nearness::kProjection ? c.key : std::sqrt(c.d2);
        edges.push_back({u, c.target, i, height});
      }
    }
  }
  return edges;
}

// Frontier entry for the theta sweep. With a = cross(lower ray, p) and
// b = cross(p, upper ray), w lies in the cone of u iff a(w) >= a(u) and
// b(w) > b(u).
struct FrontierKey {
  double a;
  double b;
  PointIndex idx;
};

struct FrontierOrder {
  bool operator()(const FrontierKey &l, const FrontierKey &r) const {
    if (l.a != r.a) {
      return l.a < r.a;
    }
    if (l.b != r.b) {
      return l.b > r.b;
    }
    return l.idx < r.idx;
  }
};

// Points are swept in increasing projection onto the cone axis. The frontier
// holds the points whose cone is still empty; no frontier point lies in the
// cone of another, so ordered by a they have non-increasing b and the points
// whose cone contains w form a contiguous run just left of a(w).
void sweep_cone(const PointSet &points, const ConeGeometry &geom, int cone, std::vector<DirectedEdge> &edges) {
  const std::size_t n = points.size();
  const Point lower = geom.boundary(cone - 1);
  const Point upper = geom.boundary(cone);
  const Point axis = geom.axis(cone);

  std::vector<double> a(n), b(n), h(n);
  for (std::size_t p = 0; p < n; ++p) {
    a[p] = cross(lower, points[p]);
    b[p] = cross(points[p], upper);
    h[p] = dot(points[p], axis);
  }
  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), PointIndex{0});
  std::sort(order.begin(), order.end(), [&](PointIndex l, PointIndex r) {
    return std::tie(h[l], l) < std::tie(h[r], r);
  });

  std::set<FrontierKey, FrontierOrder> frontier;
  std::vector<std::pair<PointIndex, PointIndex>> claims; // (u, w): w lies in the cone of u
  constexpr double kLowest = -std::numeric_limits<double>::infinity();
  constexpr PointIndex kLast = std::numeric_limits<PointIndex>::max();

  for (std::size_t first = 0; first < n;) {
    std::size_t last = first + 1;
    while (last < n && h[order[last]] == h[order[first]]) {
      ++last;
    }
    claims.clear();
    for (std::size_t p = first; p < last; ++p) {
      const PointIndex w = order[p];
      auto it = frontier.upper_bound(FrontierKey{a[w], kLowest, kLast});
      while (it != frontier.begin()) {
        auto prev = std::prev(it);
        if (!(prev->b < b[w])) {
          break;
        }
        claims.emplace_back(prev->idx, w);
        it = prev;
      }
    }
    if (last - first > 1) {
      // Points sharing one projection: each u keeps the Euclidean-nearest
      // claimant, then the lowest index.
      std::sort(claims.begin(), claims.end(), [&](const auto &l, const auto &r) {
        const double dl = dist2(points[l.first], points[l.second]);
        const double dr = dist2(points[r.first], points[r.second]);
        return std::tie(l.first, dl, l.second) < std::tie(r.first, dr, r.second);
      });
      claims.erase(std::unique(claims.begin(), claims.end(),
                               [](const auto &l, const auto &r) { return l.first == r.first; }),
                   claims.end());
    }
    for (const auto &[u, w] : claims) {
      edges.push_back({u, w, cone, dot(points[w] - points[u], axis)});
      frontier.erase(FrontierKey{a[u], b[u], u});
    }
    for (std::size_t p = first; p < last; ++p) {
      const PointIndex w = order[p];
      frontier.insert(FrontierKey{a[w], b[w], w});
    }
    first = last;
  }
}

std::vector<DirectedEdge> sweep_edges(const PointSet &points, const ConeGeometry &geom) {
  // Half-plane cones (k = 2) do not reduce to a two-sided dominance query.
  if (geom.k() == 2) {
    return naive_edges(points, geom, Nearness::kProjection);
  }
  std::vector<DirectedEdge> edges;
  edges.reserve(points.size() * static_cast<std::size_t>(geom.k()));
  for (int cone = 1; cone <= geom.k(); ++cone) {
    sweep_cone(points, geom, cone, edges);
  }
  return edges;
}

// Bucket grid for Euclidean nearest-in-cone queries.
class PointGrid {
public:
  explicit PointGrid(const PointSet &points) : points_(points) {
    min_ = max_ = points.empty() ? Point{} : points.front();
    for (const Point &p : points) {
      min_.x = std::min(min_.x, p.x);
      min_.y = std::min(min_.y, p.y);
      max_.x = std::max(max_.x, p.x);
      max_.y = std::max(max_.y, p.y);
    }
    const double extent = std::max(max_.x - min_.x, max_.y - min_.y);
    const double per_side = std::ceil(std::sqrt(static_cast<double>(points.size()) / 2.0));
    cell_ = extent > 0.0 ? extent / std::max(per_side, 1.0) : 1.0;
    nx_ = cells_along(max_.x - min_.x);
    ny_ = cells_along(max_.y - min_.y);
    start_.assign(nx_ * ny_ + 1, 0);
    for (const Point &p : points) {
      ++start_[cell_of(p) + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    members_.resize(points.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (PointIndex i = 0; i < points.size(); ++i) {
      members_[fill[cell_of(points[i])]++] = i;
    }
  }

  double cell() const { return cell_; }
  long nx() const { return static_cast<long>(nx_); }
  long ny() const { return static_cast<long>(ny_); }
  long column(const Point &p) const { return static_cast<long>(clamp_cell((p.x - min_.x) / cell_, nx_)); }
  long row(const Point &p) const { return static_cast<long>(clamp_cell((p.y - min_.y) / cell_, ny_)); }

  std::vector<Point> bounds() const {
    return {min_, {max_.x, min_.y}, max_, {min_.x, max_.y}};
  }

  template <typename Visit> void visit_cell(long cx, long cy, Visit &&visit) const {
    if (cx < 0 || cy < 0 || cx >= nx() || cy >= ny()) {
      return;
    }
    const std::size_t c = static_cast<std::size_t>(cy) * nx_ + static_cast<std::size_t>(cx);
    for (std::size_t m = start_[c]; m < start_[c + 1]; ++m) {
      visit(members_[m]);
    }
  }

private:
  std::size_t cells_along(double span) const { return static_cast<std::size_t>(std::floor(span / cell_)) + 1; }

  static std::size_t clamp_cell(double v, std::size_t count) {
    const auto c = static_cast<std::size_t>(std::max(0.0, std::floor(v)));
    return std::min(c, count - 1);
  }

  std::size_t cell_of(const Point &p) const {
    return static_cast<std::size_t>(row(p)) * nx_ + static_cast<std::size_t>(column(p));
  }

  const PointSet &points_;
  Point min_, max_;
  double cell_ = 1.0;
  std::size_t nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<PointIndex> members_;
};

std::vector<DirectedEdge> grid_yao_edges(const PointSet &points, const ConeGeometry &geom) {
  const int k = geom.k();
  std::vector<DirectedEdge> edges;
  if (points.size() < 2) {
    return edges;
  }
  const PointGrid grid(points);
  const std::vector<Point> box = grid.bounds();
  const long max_ring = std::max(grid.nx(), grid.ny());

  std::vector<Candidate> best(k);
  std::vector<double> reach(k);
  for (PointIndex u = 0; u < points.size(); ++u) {
    const Point pu = points[u];
    // Farthest point of (cone ∩ bounding box) bounds how far each cone must be searched.
    for (int i = 1; i <= k; ++i) {
      const Point lower = geom.boundary(i - 1);
      const Point upper = geom.boundary(i);
      const Point n1{-lower.y, lower.x};
      const Point n2{upper.y, -upper.x};
      auto region = clip_half_plane(box, n1, dot(n1, pu));
      region = clip_half_plane(region, n2, dot(n2, pu));
      double r = -1.0;
      for (const Point &v : region) {
        r = std::max(r, norm(v - pu));
      }
      reach[i - 1] = r;
    }
    std::fill(best.begin(), best.end(), Candidate{});

    const long cx = grid.column(pu);
    const long cy = grid.row(pu);
    auto consider = [&](PointIndex w) {
      if (w == u) {
        return;
      }
      const int i = cone_index(pu, points[w], geom);
      const double dd = dist2(pu, points[w]);
      if (best[i - 1].improves(dd, dd, w)) {
        best[i - 1] = Candidate{w, dd, dd, true};
      }
    };
    for (long ring = 0; ring <= max_ring; ++ring) {
      if (ring == 0) {
        grid.visit_cell(cx, cy, consider);
      } else {
        for (long d = -ring; d <= ring; ++d) {
          grid.visit_cell(cx + d, cy - ring, consider);
          grid.visit_cell(cx + d, cy + ring, consider);
        }
        for (long d = -ring + 1; d <= ring - 1; ++d) {
          grid.visit_cell(cx - ring, cy + d, consider);
          grid.visit_cell(cx + ring, cy + d, consider);
        }
      }
      // Points beyond this ring are at least ring*cell away.
      const double horizon = static_cast<double>(ring) * grid.cell();
      bool settled = true;
      for (int i = 0; i < k && settled; ++i) {
        const bool near_enough = best[i].found && std::sqrt(best[i].d2) < horizon;
        const bool exhausted = reach[i] + grid.cell() < horizon;
        settled = near_enough || exhausted;
      }
      if (settled) {
        break;
      }
    }
    for (int i = 1; i <= k; ++i) {
      if (best[i - 1].found) {
        edges.push_back({u, best[i - 1].target, i, std::sqrt(best[i - 1].d2)});
      }
    }
  }
  return edges;
}

} // namespace

ThetaGraph build_theta(const PointSet &points, int k, BuildMethod method) {
  const ConeGeometry geom(k);
  check_distinct(points);
  switch (method) {
  case BuildMethod::kNaive:
    return ThetaGraph(points.size(), k, naive_edges(points, geom, Nearness::kProjection));
  case BuildMethod::kSweep:
    return ThetaGraph(points.size(), k, sweep_edges(points, geom));
  default:
    throw GeometryError("theta graphs are built with the naive or sweep method");
  }
}

ThetaGraph build_yao(const PointSet &points, int k, BuildMethod method) {
  const ConeGeometry geom(k);
  check_distinct(points);
  switch (method) {
  case BuildMethod::kNaive:
    return ThetaGraph(points.size(), k, naive_edges(points, geom, Nearness::kEuclidean));
  case BuildMethod::kGrid:
    return ThetaGraph(points.size(), k, grid_yao_edges(points, geom));
  default:
    throw GeometryError("Yao graphs are built with the naive or grid method");
  }
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

void fill_degree_figures(EdgeStats &stats, const std::vector<std::size_t> &deg, const std::vector<PointIndex> &over) {
  stats.n = over.size();
  std::size_t sum = 0;
  for (PointIndex v : over) {
    ++stats.degree_histogram[deg[v]];
    sum += deg[v];
  }
  stats.avg_degree = over.empty() ? 0.0 : static_cast<double>(sum) / static_cast<double>(over.size());
}

} // namespace

EdgeStats edge_stats(const ThetaGraph &g) {
  EdgeStats stats;
  stats.directed = g.edges().size();
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    stats.mutual += g.mutual(e) ? 1 : 0;
  }
  stats.undirected = stats.directed - stats.mutual / 2;
  std::vector<PointIndex> all(g.n());
  std::iota(all.begin(), all.end(), PointIndex{0});
  fill_degree_figures(stats, g.degrees(), all);
  return stats;
}

EdgeStats core_stats(const ThetaGraph &g, const PointSet &points, const CoreRegion &core, CoreMode mode) {
  if (points.size() != g.n()) {
    throw GeometryError("point set does not match graph");
  }
  if (!(core.lo() < core.hi())) {
    throw GeometryError("empty core");
  }
  std::vector<char> inside(points.size(), 0);
  std::vector<PointIndex> core_points;
  for (PointIndex v = 0; v < points.size(); ++v) {
    if (core.contains(points[v])) {
      inside[v] = 1;
      core_points.push_back(v);
    }
  }

  EdgeStats stats;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const DirectedEdge &edge = g.edges()[e];
    if (inside[edge.source] || inside[edge.target]) {
      ++stats.directed;
      stats.mutual += g.mutual(e) ? 1 : 0;
    }
  }
  stats.undirected = stats.directed - stats.mutual / 2;

  fill_degree_figures(stats, g.degrees(), core_points);
  if (mode == CoreMode::kEndpointInCore) {
    stats.avg_degree =
        core_points.empty() ? 0.0 : 2.0 * static_cast<double>(stats.undirected) / static_cast<double>(core_points.size());
  }
  return stats;
}

void write_edges_csv(std::ostream &out, const ThetaGraph &g) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "source,target,cone,height,mutual\n";
  out << std::setprecision(17);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const DirectedEdge &edge = g.edges()[e];
    out << edge.source << ',' << edge.target << ',' << edge.cone << ',' << edge.height << ','
        << (g.mutual(e) ? 1 : 0) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

} // namespace thetagraph
