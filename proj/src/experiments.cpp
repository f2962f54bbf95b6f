#include "thetagraph/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "thetagraph/closed_form.hpp"
#include "thetagraph/graph.hpp"

namespace thetagraph {

namespace {

// High byte of a stream id separates experiment kinds; k and the repetition
// fill the rest, so a row's numbers do not depend on the k range requested.
enum class StreamTag : std::uint64_t { kDegree = 1, kMutual = 2, kConcentration = 3 };

SeedSpec stream_for(const ExperimentConfig &cfg, StreamTag tag, int k, std::size_t rep) {
  const auto id = (static_cast<std::uint64_t>(tag) << 56) | (static_cast<std::uint64_t>(k) << 32) |
                  static_cast<std::uint64_t>(rep);
  return {cfg.seed, id};
}

// Runs task(i) for i in [0, count) on up to `threads` workers. Callers write
// into slot i only, so the reduction order stays fixed.
template <typename Task> void for_each_rep(std::size_t count, unsigned threads, Task &&task) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next = count;
        }
      }
    });
  }
  for (auto &t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

struct Summary {
  double mean = 0.0;
  std::optional<double> sd;
  std::optional<double> std_error;
};

Summary summarize(const std::vector<double> &values) {
  Summary s;
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double sq = 0.0;
    for (double v : values) {
      sq += (v - s.mean) * (v - s.mean);
    }
    s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
    s.std_error = *s.sd / std::sqrt(static_cast<double>(values.size()));
  }
  return s;
}

struct Sample {
  PointSet points;
  double side = 1.0;
};

Sample draw(const ExperimentConfig &cfg, SeedSpec seed) {
  if (cfg.model == PointModel::kIud) {
    return {sample_iud(cfg.n, Window::square(1.0), seed), 1.0};
  }
  const double side = std::sqrt(static_cast<double>(cfg.n));
  return {sample_poisson(1.0, Window::square(side), seed), side};
}

CoreRegion degree_core(const ExperimentConfig &cfg, int k) {
  if (cfg.model == PointModel::kIud) {
    return CoreRegion(1.0, 1.0 / 6.0);
  }
  return CoreRegion::from_constant(std::sqrt(static_cast<double>(cfg.n)), cfg.n, k, cfg.c);
}

std::string format_double(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_optional(const std::optional<double> &v, int decimals) {
  return v ? format_double(*v, decimals) : std::string{};
}

nlohmann::json json_optional(const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

constexpr int kDecimals = 10;

} // namespace

PointModel parse_point_model(std::string_view name) {
  if (name == "iud") {
    return PointModel::kIud;
  }
  if (name == "poisson") {
    return PointModel::kPoisson;
  }
  throw std::invalid_argument("unknown point model: " + std::string(name));
}

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "theta") {
    return GraphKind::kTheta;
  }
  if (name == "yao") {
    return GraphKind::kYao;
  }
  throw std::invalid_argument("unknown graph kind: " + std::string(name));
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") {
    return OutputFormat::kCsv;
  }
  if (name == "json") {
    return OutputFormat::kJson;
  }
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

void ExperimentConfig::validate() const {
  if (reps == 0) {
    throw std::invalid_argument("reps must be at least 1");
  }
  if (n < 2) {
    throw std::invalid_argument("n must be at least 2");
  }
  if (!(c > 0.0)) {
    throw std::invalid_argument("c must be positive");
  }
  if (k_min < 2 || k_max < k_min) {
    throw std::invalid_argument("k range must satisfy 2 <= k_min <= k_max");
  }
}

std::vector<ResultRow> closed_form_rows(int k_min, int k_max) {
  std::vector<ResultRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    const ClosedFormValue v = degree(k);
    rows.push_back({k, v.p_k, v.d_k, std::nullopt, std::nullopt, 0});
  }
  return rows;
}

std::vector<ResultRow> run_degree_experiment(const ExperimentConfig &cfg) {
  cfg.validate();
  std::vector<ResultRow> rows = closed_form_rows(cfg.k_min, cfg.k_max);
  for (ResultRow &row : rows) {
    const CoreRegion core = degree_core(cfg, row.k);
    std::vector<double> per_rep(cfg.reps);
    for_each_rep(cfg.reps, cfg.threads, [&](std::size_t rep) {
      const Sample s = draw(cfg, stream_for(cfg, StreamTag::kDegree, row.k, rep));
      const ThetaGraph g = build_theta(s.points, row.k, BuildMethod::kSweep);
      per_rep[rep] = core_stats(g, s.points, core, CoreMode::kRestrictedWindow).avg_degree;
    });
    const Summary summary = summarize(per_rep);
    row.d_hat = summary.mean;
    row.std_error = summary.std_error;
    row.reps = cfg.reps;
  }
  return rows;
}

std::vector<ResultRow> run_table_experiment(const ExperimentConfig &cfg) {
  if (cfg.model != PointModel::kIud) {
    throw std::invalid_argument("the table experiment uses the iud model");
  }
  return run_degree_experiment(cfg);
}

MutualEstimate run_mutual_probability(const ExperimentConfig &cfg, GraphKind graph, double z) {
  cfg.validate();
  const int k = cfg.k_min;
  const double side = cfg.model == PointModel::kIud ? 1.0 : std::sqrt(static_cast<double>(cfg.n));
  const CoreRegion core = CoreRegion::from_constant(side, cfg.n, k, cfg.c);

  struct RepCounts {
    std::size_t directed = 0;
    std::size_t mutual = 0;
  };
  std::vector<RepCounts> counts(cfg.reps);
  for_each_rep(cfg.reps, cfg.threads, [&](std::size_t rep) {
    const Sample s = draw(cfg, stream_for(cfg, StreamTag::kMutual, k, rep));
    const ThetaGraph g = graph == GraphKind::kTheta ? build_theta(s.points, k, BuildMethod::kSweep)
                                                    : build_yao(s.points, k, BuildMethod::kGrid);
    RepCounts c;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      if (core.contains(s.points[g.edges()[e].source])) {
        ++c.directed;
        c.mutual += g.mutual(e) ? 1 : 0;
      }
    }
    counts[rep] = c;
  });

  MutualEstimate est;
  est.k = k;
  est.graph = graph;
  std::vector<double> ratios;
  for (const RepCounts &c : counts) {
    est.directed += c.directed;
    est.mutual += c.mutual;
    if (c.directed > 0) {
      ratios.push_back(static_cast<double>(c.mutual) / static_cast<double>(c.directed));
    }
  }
  if (est.directed == 0) {
    throw std::runtime_error("no directed edges leave the core");
  }
  const Summary summary = summarize(ratios);
  est.estimate = summary.mean;
  est.std_error = summary.std_error;
  est.reps = ratios.size();
  const double half = summary.std_error ? z * *summary.std_error : 0.0;
  est.ci_low = est.estimate - half;
  est.ci_high = est.estimate + half;
  return est;
}

ConcentrationReport run_concentration(const ExperimentConfig &cfg) {
  cfg.validate();
  const int k = cfg.k_min;
  const double nn = static_cast<double>(cfg.n);
  const double log_n = std::log(nn);
  const double side = std::sqrt(nn);
  const CoreRegion core = CoreRegion::from_constant(side, cfg.n, k, cfg.c);

  ConcentrationReport report;
  report.n = cfg.n;
  report.k = k;
  report.c = cfg.c;
  report.reps = cfg.reps;
  report.theoretical_center = nn * degree(k).d_k / 2.0;
  report.expected_window = k * std::sqrt(nn * k * log_n);
  report.abstract_window = k * std::sqrt(nn * log_n);
  report.deviation_threshold = k * std::sqrt(cfg.c * nn * log_n);
  const double core_side = side - 4.0 * core.margin();
  report.expected_core_count = core_side * core_side;
  report.core_threshold = std::sqrt(cfg.c * k * log_n);

  std::vector<double> edges(cfg.reps);
  std::vector<double> core_counts(cfg.reps);
  for_each_rep(cfg.reps, cfg.threads, [&](std::size_t rep) {
    const PointSet points =
        sample_iud(cfg.n, Window::square(side), stream_for(cfg, StreamTag::kConcentration, k, rep));
    const ThetaGraph g = build_theta(points, k, BuildMethod::kSweep);
    edges[rep] = static_cast<double>(edge_stats(g).undirected);
    core_counts[rep] = static_cast<double>(std::count_if(points.begin(), points.end(),
                                                         [&](const Point &p) { return core.contains(p); }));
  });

  const Summary edge_summary = summarize(edges);
  report.mean_edges = edge_summary.mean;
  report.center_gap = std::abs(report.mean_edges - report.theoretical_center);
  report.edges_sd = edge_summary.sd;
  if (cfg.reps >= 2) {
    double max_dev = 0.0;
    std::size_t exceed = 0;
    for (double m : edges) {
      const double dev = std::abs(m - report.mean_edges);
      max_dev = std::max(max_dev, dev);
      exceed += dev >= report.deviation_threshold ? 1 : 0;
    }
    report.max_deviation = max_dev;
    report.exceedance_fraction = static_cast<double>(exceed) / static_cast<double>(cfg.reps);
  }

  const Summary core_summary = summarize(core_counts);
  report.mean_core_count = core_summary.mean;
  std::size_t core_exceed = 0;
  for (double count : core_counts) {
    core_exceed += std::abs(count - report.expected_core_count) >= report.core_threshold ? 1 : 0;
  }
  report.core_exceedance_fraction = static_cast<double>(core_exceed) / static_cast<double>(cfg.reps);
  return report;
}

void emit_table(const std::vector<ResultRow> &rows, OutputFormat format, std::ostream &out) {
  if (format == OutputFormat::kCsv) {
    out << "k,p_k,d_k,d_k_over_k,d_hat_k,stderr,reps\n";
    for (const ResultRow &r : rows) {
      out << r.k << ',' << format_double(r.p_k, kDecimals) << ',' << format_double(r.d_k, kDecimals) << ','
          << format_double(r.d_k / r.k, kDecimals) << ',' << format_optional(r.d_hat, kDecimals) << ','
          << format_optional(r.std_error, kDecimals) << ',' << r.reps << '\n';
    }
    return;
  }
  nlohmann::json doc = nlohmann::json::array();
  for (const ResultRow &r : rows) {
    doc.push_back({{"k", r.k},
                   {"p_k", r.p_k},
                   {"d_k", r.d_k},
                   {"d_k_over_k", r.d_k / r.k},
                   {"d_hat_k", json_optional(r.d_hat)},
                   {"stderr", json_optional(r.std_error)},
                   {"reps", r.reps}});
  }
  out << doc.dump(2) << '\n';
}

void emit_mutual(const MutualEstimate &e, double reference, OutputFormat format, std::ostream &out) {
  const char *graph = e.graph == GraphKind::kTheta ? "theta" : "yao";
  if (format == OutputFormat::kCsv) {
    out << "k,graph,estimate,stderr,ci_low,ci_high,reference,reps,directed,mutual\n";
    out << e.k << ',' << graph << ',' << format_double(e.estimate, kDecimals) << ','
        << format_optional(e.std_error, kDecimals) << ',' << format_double(e.ci_low, kDecimals) << ','
        << format_double(e.ci_high, kDecimals) << ',' << format_double(reference, kDecimals) << ',' << e.reps << ','
        << e.directed << ',' << e.mutual << '\n';
    return;
  }
  const nlohmann::json doc = {{"k", e.k},
                              {"graph", graph},
                              {"estimate", e.estimate},
                              {"stderr", json_optional(e.std_error)},
                              {"ci_low", e.ci_low},
                              {"ci_high", e.ci_high},
                              {"reference", reference},
                              {"reps", e.reps},
                              {"directed", e.directed},
                              {"mutual", e.mutual}};
  out << doc.dump(2) << '\n';
}

void emit_concentration(const ConcentrationReport &r, OutputFormat format, std::ostream &out) {
  const std::vector<std::pair<std::string, std::optional<double>>> fields = {
      {"mean_edges", r.mean_edges},
      {"theoretical_center", r.theoretical_center},
      {"center_gap", r.center_gap},
      {"expected_window", r.expected_window},
      {"abstract_window", r.abstract_window},
      {"deviation_threshold", r.deviation_threshold},
      {"edges_sd", r.edges_sd},
      {"max_deviation", r.max_deviation},
      {"exceedance_fraction", r.exceedance_fraction},
      {"expected_core_count", r.expected_core_count},
      {"mean_core_count", r.mean_core_count},
      {"core_threshold", r.core_threshold},
      {"core_exceedance_fraction", r.core_exceedance_fraction},
  };
  if (format == OutputFormat::kCsv) {
    out << "field,value\n";
    out << "n," << r.n << "\nk," << r.k << "\nc," << format_double(r.c, kDecimals) << "\nreps," << r.reps << '\n';
    for (const auto &[name, value] : fields) {
      out << name << ',' << (value ? format_double(*value, kDecimals) : std::string("undefined")) << '\n';
    }
    return;
  }
  nlohmann::json doc = {{"n", r.n}, {"k", r.k}, {"c", r.c}, {"reps", r.reps}};
  for (const auto &[name, value] : fields) {
    doc[name] = json_optional(value);
  }
  out << doc.dump(2) << '\n';
}

} // namespace thetagraph
