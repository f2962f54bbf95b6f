#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "thetagraph/random_models.hpp"

namespace thetagraph {

enum class PointModel { kIud, kPoisson };
enum class GraphKind { kTheta, kYao };
enum class OutputFormat { kCsv, kJson };

PointModel parse_point_model(std::string_view name);
GraphKind parse_graph_kind(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

struct ExperimentConfig {
  int k_min = 4;
  int k_max = 4;
  /// Points per repetition (iud), or expected points, i.e. window area at unit intensity (poisson).
  std::size_t n = 4000;
  std::size_t reps = 200;
  PointModel model = PointModel::kIud;
  /// Core margin constant in t = sqrt(c k ln n).
  double c = 1.0;
  std::uint64_t seed = 1;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;

  /// Throws std::invalid_argument on reps == 0, n < 2, c <= 0 or an empty k range.
  void validate() const;
};

struct ResultRow {
  int k = 0;
  double p_k = 0.0;
  double d_k = 0.0;
  std::optional<double> d_hat;
  std::optional<double> std_error; ///< across repetition means; needs reps >= 2
  std::size_t reps = 0;
};

/// Mean degree of core points per repetition, averaged over repetitions, for
/// each k in the range. iud: n points in the unit square, core [1/3, 2/3]^2.
/// poisson: unit intensity on a square of area n, core margin from c.
std::vector<ResultRow> run_degree_experiment(const ExperimentConfig &cfg);

/// run_degree_experiment restricted to the iud model.
std::vector<ResultRow> run_table_experiment(const ExperimentConfig &cfg);

/// Closed-form rows only (no simulation columns).
std::vector<ResultRow> closed_form_rows(int k_min, int k_max);

struct MutualEstimate {
  int k = 0;
  GraphKind graph = GraphKind::kTheta;
  double estimate = 0.0;
  std::optional<double> std_error;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t reps = 0;
  std::size_t directed = 0; ///< summed over repetitions, edges with source in the core
  std::size_t mutual = 0;
};

/// Fraction of directed edges with source in the core that are mutual,
/// averaged over repetitions; the interval is estimate +/- z standard errors.
/// Uses cfg.k_min.
MutualEstimate run_mutual_probability(const ExperimentConfig &cfg, GraphKind graph, double z = 3.0);

struct ConcentrationReport {
  std::size_t n = 0;
  int k = 0;
  double c = 0.0;
  std::size_t reps = 0;
  double mean_edges = 0.0;
  double theoretical_center = 0.0; ///< n d_k / 2
  double center_gap = 0.0;         ///< |mean_edges - theoretical_center|
  double expected_window = 0.0;    ///< k sqrt(n k ln n)
  double abstract_window = 0.0;    ///< k sqrt(n ln n)
  double deviation_threshold = 0.0; ///< k sqrt(c n ln n)
  std::optional<double> edges_sd;
  std::optional<double> max_deviation;
  std::optional<double> exceedance_fraction;
  double expected_core_count = 0.0; ///< (sqrt(n) - 4t)^2
  double mean_core_count = 0.0;
  double core_threshold = 0.0;      ///< sqrt(c k ln n)
  double core_exceedance_fraction = 0.0;
};

/// Undirected edge count of theta_k over repetitions of n iud points in
/// [0, sqrt(n)]^2, with the core point count alongside. Uses cfg.k_min.
ConcentrationReport run_concentration(const ExperimentConfig &cfg);

/// Columns `k,p_k,d_k,d_k_over_k,d_hat_k,stderr,reps`; JSON is an array of
/// objects with the same keys (missing values are empty / null).
void emit_table(const std::vector<ResultRow> &rows, OutputFormat format, std::ostream &out);
void emit_mutual(const MutualEstimate &estimate, double reference, OutputFormat format, std::ostream &out);
void emit_concentration(const ConcentrationReport &report, OutputFormat format, std::ostream &out);

} // namespace thetagraph
