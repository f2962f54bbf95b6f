// Command-line front end: closed-form tables, quadrature, Monte Carlo runs and
// graph dumps for theta and Yao graphs of random point sets.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetagraph/closed_form.hpp"
#include "thetagraph/experiments.hpp"
#include "thetagraph/graph.hpp"
#include "thetagraph/quadrature.hpp"
#include "thetagraph/random_models.hpp"

namespace tg = thetagraph;

namespace {

struct CommonOptions {
  std::string format = "csv";
  unsigned threads = 1;
  std::string out;
};

void add_common(CLI::App *cmd, CommonOptions &opts) {
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", opts.threads, "Worker threads (output does not depend on this)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out, "Write output to this file instead of stdout");
}

template <typename Writer> void with_output(const std::string &path, Writer &&write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open " + path);
  }
  write(file);
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

std::string scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

tg::YaoInnerDomain parse_domain(const std::string &name) {
  if (name == "normalized") {
    return tg::YaoInnerDomain::kNormalizedAngle;
  }
  if (name == "literal-angle") {
    return tg::YaoInnerDomain::kLiteralAngle;
  }
  return tg::YaoInnerDomain::kLiteralLength;
}

tg::BuildMethod parse_method(const std::string &name) {
  if (name == "naive") {
    return tg::BuildMethod::kNaive;
  }
  if (name == "sweep") {
    return tg::BuildMethod::kSweep;
  }
  return tg::BuildMethod::kGrid;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Theta and Yao graph statistics of random point sets"};
  app.require_subcommand(1);

  // table
  CommonOptions table_opts;
  int table_kmin = 4;
  int table_kmax = 20;
  std::size_t table_reps = 0;
  std::size_t table_n = 4000;
  std::uint64_t table_seed = 1;
  auto *table = app.add_subcommand("table", "p_k, d_k and d_k/k per k; simulated d_hat_k when --reps > 0");
  table->add_option("--kmin", table_kmin)->check(CLI::Range(4, 1000));
  table->add_option("--kmax", table_kmax)->check(CLI::Range(4, 1000));
  table->add_option("--reps", table_reps, "Monte Carlo repetitions (0: closed form only)");
  table->add_option("--n", table_n, "Points per repetition in the unit square");
  table->add_option("--seed", table_seed);
  add_common(table, table_opts);

  // pk
  CommonOptions pk_opts;
  int pk_k = 4;
  std::string pk_graph = "theta";
  std::string pk_method = "closed";
  double pk_side = 100.0;
  std::size_t pk_reps = 50;
  std::uint64_t pk_seed = 1;
  double pk_c = 1.0;
  auto *pk = app.add_subcommand("pk", "Mutual-edge probability by one method");
  pk->add_option("--k", pk_k)->required()->check(CLI::Range(4, 100000));
  pk->add_option("--graph", pk_graph)->check(CLI::IsMember({"theta", "yao"}));
  pk->add_option("--method", pk_method)->check(CLI::IsMember({"closed", "quadrature", "montecarlo"}));
  pk->add_option("--side", pk_side, "Poisson window side for montecarlo");
  pk->add_option("--reps", pk_reps);
  pk->add_option("--seed", pk_seed);
  pk->add_option("--c", pk_c, "Core margin constant");
  add_common(pk, pk_opts);

  // simulate
  CommonOptions sim_opts;
  std::string sim_model = "iud";
  std::size_t sim_n = 4000;
  int sim_k = 0;
  int sim_kmin = 4;
  int sim_kmax = 4;
  std::size_t sim_reps = 200;
  std::uint64_t sim_seed = 1;
  double sim_c = 1.0;
  auto *simulate = app.add_subcommand("simulate", "Average core degree over repetitions");
  simulate->add_option("--model", sim_model)->check(CLI::IsMember({"iud", "poisson"}));
  simulate->add_option("--n", sim_n, "Points (iud) or window area (poisson)");
  simulate->add_option("--k", sim_k, "Single k (overrides --kmin/--kmax)");
  simulate->add_option("--kmin", sim_kmin);
  simulate->add_option("--kmax", sim_kmax);
  simulate->add_option("--reps", sim_reps);
  simulate->add_option("--seed", sim_seed);
  simulate->add_option("--c", sim_c, "Core margin constant (poisson)");
  add_common(simulate, sim_opts);

  // concentration
  CommonOptions conc_opts;
  std::size_t conc_n = 4000;
  int conc_k = 6;
  double conc_c = 1.0;
  std::size_t conc_reps = 500;
  std::uint64_t conc_seed = 1;
  auto *concentration = app.add_subcommand("concentration", "Spread of the edge count around its mean");
  concentration->add_option("--n", conc_n);
  concentration->add_option("--k", conc_k)->check(CLI::Range(4, 1000));
  concentration->add_option("--c", conc_c);
  concentration->add_option("--reps", conc_reps);
  concentration->add_option("--seed", conc_seed);
  add_common(concentration, conc_opts);

  // quadrature
  CommonOptions quad_opts;
  int quad_k = 4;
  std::string quad_graph = "theta";
  double quad_abs = 1e-10;
  double quad_rel = 1e-10;
  std::string quad_domain = "normalized";
  auto *quadrature = app.add_subcommand("quadrature", "Numerical mutual-edge probability");
  quadrature->add_option("--k", quad_k)->required()->check(CLI::Range(4, 100000));
  quadrature->add_option("--graph", quad_graph)->check(CLI::IsMember({"theta", "yao"}));
  quadrature->add_option("--abs-tol", quad_abs)->check(CLI::PositiveNumber);
  quadrature->add_option("--rel-tol", quad_rel)->check(CLI::PositiveNumber);
  quadrature->add_option("--yao-domain", quad_domain, "Reading of the Yao inner integral")
      ->check(CLI::IsMember({"normalized", "literal-angle", "literal-length"}));
  add_common(quadrature, quad_opts);

  // build
  std::string build_points;
  std::string build_model = "iud";
  std::size_t build_n = 100;
  std::uint64_t build_seed = 1;
  int build_k = 6;
  std::string build_graph = "theta";
  std::string build_method;
  std::string build_edges_out;
  std::string build_points_out;
  auto *build = app.add_subcommand("build", "Build one graph and dump its edges as CSV");
  build->add_option("--points", build_points, "Read points from an x,y CSV instead of sampling");
  build->add_option("--model", build_model)->check(CLI::IsMember({"iud", "poisson"}));
  build->add_option("--n", build_n);
  build->add_option("--seed", build_seed);
  build->add_option("--k", build_k)->check(CLI::Range(2, 100000));
  build->add_option("--graph", build_graph)->check(CLI::IsMember({"theta", "yao"}));
  build->add_option("--method", build_method)->check(CLI::IsMember({"naive", "sweep", "grid"}));
  build->add_option("--edges-out", build_edges_out, "Edge CSV destination (default stdout)");
  build->add_option("--points-out", build_points_out, "Also write the point set here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table) {
      const auto format = tg::parse_output_format(table_opts.format);
      std::vector<tg::ResultRow> rows;
      if (table_reps == 0) {
        rows = tg::closed_form_rows(table_kmin, table_kmax);
      } else {
        tg::ExperimentConfig cfg;
        cfg.k_min = table_kmin;
        cfg.k_max = table_kmax;
        cfg.n = table_n;
        cfg.reps = table_reps;
        cfg.seed = table_seed;
        cfg.threads = table_opts.threads;
        rows = tg::run_table_experiment(cfg);
      }
      with_output(table_opts.out, [&](std::ostream &os) { tg::emit_table(rows, format, os); });
    } else if (*pk) {
      const auto format = tg::parse_output_format(pk_opts.format);
      const auto graph = tg::parse_graph_kind(pk_graph);
      if (pk_method == "montecarlo") {
        tg::ExperimentConfig cfg;
        cfg.k_min = cfg.k_max = pk_k;
        cfg.n = static_cast<std::size_t>(std::llround(pk_side * pk_side));
        cfg.reps = pk_reps;
        cfg.model = tg::PointModel::kPoisson;
        cfg.c = pk_c;
        cfg.seed = pk_seed;
        cfg.threads = pk_opts.threads;
        const auto est = tg::run_mutual_probability(cfg, graph);
        const double reference =
            graph == tg::GraphKind::kTheta ? tg::degree(pk_k).p_k : tg::p_yao_numeric(pk_k).value;
        with_output(pk_opts.out, [&](std::ostream &os) { tg::emit_mutual(est, reference, format, os); });
      } else {
        double value = 0.0;
        double error = 0.0;
        if (pk_method == "closed") {
          if (graph == tg::GraphKind::kYao) {
            throw std::invalid_argument("Yao graphs have no closed form; use --method quadrature");
          }
          value = tg::degree(pk_k).p_k;
        } else {
          const auto r = graph == tg::GraphKind::kYao ? tg::p_yao_numeric(pk_k)
                         : pk_k % 2 == 0             ? tg::p_even_numeric(pk_k)
                                                     : tg::p_odd_numeric(pk_k);
          value = r.value;
          error = r.error;
        }
        with_output(pk_opts.out, [&](std::ostream &os) {
          if (format == tg::OutputFormat::kCsv) {
            os << "k,graph,method,p_k,error,d_k\n"
               << pk_k << ',' << pk_graph << ',' << pk_method << ',' << fixed(value) << ',' << scientific(error)
               << ',' << fixed((2.0 - value) * pk_k) << '\n';
          } else {
            const nlohmann::json doc = {{"k", pk_k},     {"graph", pk_graph}, {"method", pk_method},
                                        {"p_k", value},  {"error", error},    {"d_k", (2.0 - value) * pk_k}};
            os << doc.dump(2) << '\n';
          }
        });
      }
    } else if (*simulate) {
      tg::ExperimentConfig cfg;
      cfg.k_min = sim_k > 0 ? sim_k : sim_kmin;
      cfg.k_max = sim_k > 0 ? sim_k : sim_kmax;
      cfg.n = sim_n;
      cfg.reps = sim_reps;
      cfg.model = tg::parse_point_model(sim_model);
      cfg.c = sim_c;
      cfg.seed = sim_seed;
      cfg.threads = sim_opts.threads;
      const auto format = tg::parse_output_format(sim_opts.format);
      const auto rows = tg::run_degree_experiment(cfg);
      with_output(sim_opts.out, [&](std::ostream &os) { tg::emit_table(rows, format, os); });
    } else if (*concentration) {
      tg::ExperimentConfig cfg;
      cfg.k_min = cfg.k_max = conc_k;
      cfg.n = conc_n;
      cfg.reps = conc_reps;
      cfg.c = conc_c;
      cfg.seed = conc_seed;
      cfg.threads = conc_opts.threads;
      const auto format = tg::parse_output_format(conc_opts.format);
      const auto report = tg::run_concentration(cfg);
      with_output(conc_opts.out, [&](std::ostream &os) { tg::emit_concentration(report, format, os); });
    } else if (*quadrature) {
      tg::QuadratureConfig cfg;
      cfg.abs_tol = quad_abs;
      cfg.rel_tol = quad_rel;
      cfg.truncation_mass = quad_abs / 100.0;
      const auto format = tg::parse_output_format(quad_opts.format);
      const bool yao = tg::parse_graph_kind(quad_graph) == tg::GraphKind::kYao;
      const auto r = yao               ? tg::p_yao_numeric(quad_k, cfg, parse_domain(quad_domain))
                     : quad_k % 2 == 0 ? tg::p_even_numeric(quad_k, cfg)
                                       : tg::p_odd_numeric(quad_k, cfg);
      const std::optional<double> closed = yao ? std::nullopt : std::optional(tg::degree(quad_k).p_k);
      with_output(quad_opts.out, [&](std::ostream &os) {
        if (format == tg::OutputFormat::kCsv) {
          os << "k,graph,value,error_estimate,cutoff,closed_form,difference\n"
             << quad_k << ',' << quad_graph << ',' << fixed(r.value) << ',' << scientific(r.error) << ','
             << fixed(r.cutoff) << ',' << (closed ? fixed(*closed) : "") << ','
             << (closed ? scientific(r.value - *closed) : "") << '\n';
        } else {
          nlohmann::json doc = {{"k", quad_k},        {"graph", quad_graph}, {"value", r.value},
                                {"error_estimate", r.error}, {"cutoff", r.cutoff}};
          doc["closed_form"] = closed ? nlohmann::json(*closed) : nlohmann::json();
          doc["difference"] = closed ? nlohmann::json(r.value - *closed) : nlohmann::json();
          os << doc.dump(2) << '\n';
        }
      });
    } else if (*build) {
      tg::PointSet points;
      if (!build_points.empty()) {
        std::ifstream in(build_points);
        if (!in) {
          throw std::runtime_error("cannot open " + build_points);
        }
        points = tg::read_points_csv(in);
      } else if (tg::parse_point_model(build_model) == tg::PointModel::kIud) {
        points = tg::sample_iud(build_n, tg::Window::square(1.0), {build_seed, 0});
      } else {
        const double side = std::sqrt(static_cast<double>(build_n));
        points = tg::sample_poisson(1.0, tg::Window::square(side), {build_seed, 0});
      }
      const bool yao = tg::parse_graph_kind(build_graph) == tg::GraphKind::kYao;
      const std::string method = build_method.empty() ? (yao ? "grid" : "sweep") : build_method;
      const tg::ThetaGraph g =
          yao ? tg::build_yao(points, build_k, parse_method(method)) : tg::build_theta(points, build_k, parse_method(method));
      if (!build_points_out.empty()) {
        with_output(build_points_out, [&](std::ostream &os) { tg::write_points_csv(os, points); });
      }
      with_output(build_edges_out, [&](std::ostream &os) { tg::write_edges_csv(os, g); });
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
