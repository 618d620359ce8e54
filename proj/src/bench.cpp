#include "causalsort/bench.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "causalsort/discovery.hpp"
#include "causalsort/errors.hpp"
#include "causalsort/evaluation.hpp"
#include "causalsort/io.hpp"

namespace causalsort {

void parallel_for(int threads, int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void ExperimentConfig::validate() const {
  if (d < 1) throw std::invalid_argument("config: d must be >= 1");
  if (n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (graph_model != "er" && graph_model != "sf") {
    throw std::invalid_argument("config: graph_model must be 'er' or 'sf'");
  }
  if (gamma < 0) throw std::invalid_argument("config: gamma must be >= 0");
  if (graph_model == "er") {
    const long long max_edges = static_cast<long long>(d) * (d - 1) / 2;
    if (er_edge_count() > max_edges) {
      throw std::invalid_argument("config: gamma*d exceeds the maximum edge count");
    }
  } else {
    if (gamma != std::floor(gamma) || gamma < 1) {
      throw std::invalid_argument("config: sf graphs need integer gamma >= 1");
    }
    if (d <= static_cast<int>(gamma)) {
      throw std::invalid_argument("config: sf graphs need d > gamma");
    }
  }
  if (!(window_width > 0 && window_width <= 1)) {
    throw std::invalid_argument("config: window width must be in (0, 1]");
  }
  if (threshold_eps < 0) throw std::invalid_argument("config: threshold eps must be >= 0");
  weight_dist.validate();
  sigma_dist.validate();
  for (const auto& a : algorithms) {
    if (a != "r2_sortnregress" && a != "var_sortnregress" && a != "random_regress") {
      throw std::invalid_argument("config: unknown algorithm '" + a + "'");
    }
  }
}

int ExperimentConfig::er_edge_count() const {
  return static_cast<int>(std::llround(gamma * d));
}

Dag ExperimentConfig::sample_graph(Rng& rng) const {
  if (graph_model == "er") return sample_er_dag(d, er_edge_count(), rng);
  return sample_sf_dag(d, static_cast<int>(gamma), rng);
}

namespace {

SigmaDist sigma_dist_from_json(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "uniform");
  if (kind == "uniform") {
    return SigmaDist::Uniform(j.value("lo", 0.5), j.value("hi", 2.0));
  }
  if (kind == "exponential") return SigmaDist::Exponential(j.value("rate", 1.0));
  throw std::invalid_argument("config: sigma_dist kind must be uniform or exponential");
}

nlohmann::json sigma_dist_to_json(const SigmaDist& s) {
  nlohmann::json j;
  if (s.kind == SigmaDist::Kind::kUniform) {
    j["kind"] = "uniform";
    j["lo"] = s.lo;
    j["hi"] = s.hi;
  } else {
    j["kind"] = "exponential";
    j["rate"] = s.rate;
  }
  return j;
}

WeightDist weight_dist_from_json(const nlohmann::json& j) {
  return WeightDist{j.value("lo", 0.5), j.value("hi", 2.0)};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.graph_model = j.value("graph_model", cfg.graph_model);
  cfg.d = j.value("d", cfg.d);
  cfg.gamma = j.value("gamma", cfg.gamma);
  if (j.contains("noise_family")) {
    cfg.noise_family = noise_family_from_name(j["noise_family"].get<std::string>());
  }
  if (j.contains("sigma_dist")) cfg.sigma_dist = sigma_dist_from_json(j["sigma_dist"]);
  if (j.contains("weight_dist")) cfg.weight_dist = weight_dist_from_json(j["weight_dist"]);
  cfg.n = j.value("n", cfg.n);
  cfg.replicates = j.value("replicates", cfg.replicates);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("algorithms")) {
    cfg.algorithms = j["algorithms"].get<std::vector<std::string>>();
  }
  if (j.contains("weighting")) {
    cfg.weighting = weighting_from_name(j["weighting"].get<std::string>());
  }
  cfg.standardize_data = j.value("standardize", cfg.standardize_data);
  cfg.threshold_eps = j.value("threshold_eps", cfg.threshold_eps);
  cfg.tie_tol = j.value("tie_tol", cfg.tie_tol);
  cfg.window_width = j.value("window_width", cfg.window_width);
  if (j.contains("window_centers")) {
    cfg.window_centers = j["window_centers"].get<std::vector<double>>();
  }
  cfg.threads = j.value("threads", cfg.threads);
  cfg.validate();
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["graph_model"] = graph_model;
  j["d"] = d;
  j["gamma"] = gamma;
  j["noise_family"] = noise_family_name(noise_family);
  j["sigma_dist"] = sigma_dist_to_json(sigma_dist);
  j["weight_dist"] = {{"lo", weight_dist.lo}, {"hi", weight_dist.hi}};
  j["n"] = n;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["algorithms"] = algorithms;
  j["weighting"] = weighting_name(weighting);
  j["standardize"] = standardize_data;
  j["threshold_eps"] = threshold_eps;
  j["tie_tol"] = tie_tol;
  j["window_width"] = window_width;
  j["window_centers"] = window_centers.empty() ? default_window_centers() : window_centers;
  j["threads"] = threads;
  return j;
}

namespace {

WeightEstimate run_algorithm(const std::string& name, const Dataset& data, Rng rng) {
  if (name == "r2_sortnregress") return r2_sort_n_regress(data);
  if (name == "var_sortnregress") return var_sort_n_regress(data);
  if (name == "random_regress") return random_regress(data, rng);
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

BenchRecord run_replicate(const ExperimentConfig& cfg, int r) {
  BenchRecord record;
  record.replicate = r;
  const Rng root(cfg.seed);
  const Rng rep = root.child(substream::kReplicate, static_cast<std::uint64_t>(r));
  record.seed = rep.seed();

  Rng graph_rng = rep.child(substream::kGraph);
  Rng inst_rng = rep.child(substream::kInstance);
  Rng data_rng = rep.child(substream::kData);

  const Dag g = cfg.sample_graph(graph_rng);
  record.edge_count = g.edge_count();
  const NoiseSpec noise{cfg.noise_family, cfg.sigma_dist};
  const AnmInstance inst = sample_instance(g, cfg.weight_dist, noise, inst_rng);
  const Dataset raw = sample_data(inst, cfg.n, data_rng);

  try {
    // Sortabilities are computed on the data as generated; the variance
    // criterion is constant by construction after standardization.
    const PathLengthIndex index = path_length_index(g);
    record.v_var =
        sortability(var_criterion(raw), index, cfg.weighting, cfg.tie_tol, "var").value;
    record.v_r2 =
        sortability(r2_criterion(raw), index, cfg.weighting, cfg.tie_tol, "r2").value;
    record.v_cev =
        sortability(cev_criterion(raw, g), index, cfg.weighting, cfg.tie_tol, "cev").value;

    const Dataset working = cfg.standardize_data ? standardize(raw) : raw;
    for (size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const WeightEstimate est = run_algorithm(
          cfg.algorithms[a], working,
          rep.child(substream::kAlgorithm, static_cast<std::uint64_t>(a)));
      const Dag est_dag = threshold_to_dag(est, cfg.threshold_eps);
      record.algorithms.push_back({cfg.algorithms[a], sid(g, est_dag), shd(g, est_dag),
                                   est_dag.edge_count()});
    }
  } catch (const DegenerateColumnError& e) {
    record.skipped = true;
    record.skip_reason = e.what();
  } catch (const UndefinedSortabilityError& e) {
    record.skipped = true;
    record.skip_reason = e.what();
  }
  return record;
}

}  // namespace

BenchResult run_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();
  BenchResult result;
  result.config = cfg;
  result.records.resize(cfg.replicates);
  parallel_for(cfg.threads, cfg.replicates,
               [&](int r) { result.records[r] = run_replicate(cfg, r); });
  for (const auto& rec : result.records) {
    if (rec.skipped) ++result.skipped_count;
  }
  return result;
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
  out << "replicate,seed,skipped,skip_reason,edge_count,v_var,v_r2,v_cev";
  for (const auto& a : result.config.algorithms) {
    out << "," << a << "_sid," << a << "_shd," << a << "_edges";
  }
  out << "\n";
  for (const auto& rec : result.records) {
    out << rec.replicate << "," << rec.seed << "," << (rec.skipped ? 1 : 0) << ","
        << rec.skip_reason;
    if (rec.skipped) {
      out << "," << rec.edge_count;
      for (size_t k = 0; k < 3 + 3 * result.config.algorithms.size(); ++k) out << ",";
    } else {
      out << "," << rec.edge_count << "," << format_double(rec.v_var) << ","
          << format_double(rec.v_r2) << "," << format_double(rec.v_cev);
      for (const auto& alg : rec.algorithms) {
        out << "," << alg.sid << "," << alg.shd << "," << alg.edges;
      }
    }
    out << "\n";
  }
}

std::string bench_csv_string(const BenchResult& result) {
  std::ostringstream out;
  write_bench_csv(out, result);
  return out.str();
}

std::vector<CurvePoint> bench_sid_curve(const BenchResult& result,
                                        const std::string& algorithm) {
  std::vector<double> x, y;
  for (const auto& rec : result.records) {
    if (rec.skipped) continue;
    for (const auto& alg : rec.algorithms) {
      if (alg.algorithm == algorithm) {
        x.push_back(rec.v_r2);
        y.push_back(alg.sid);
      }
    }
  }
  const std::vector<double> centers = result.config.window_centers.empty()
                                          ? default_window_centers()
                                          : result.config.window_centers;
  return window_average(x, y, result.config.window_width, centers);
}

// ---------------------------------------------------------------------------

std::vector<ChainPositionRecord> chain_experiment(const ChainConfig& cfg) {
  if (cfg.length < 1) throw std::invalid_argument("chain: length must be >= 1");
  if (cfg.replicates < 1) throw std::invalid_argument("chain: replicates must be >= 1");
  cfg.weight_dist.validate();
  cfg.sigma_dist.validate();

  const int p = cfg.length;
  std::vector<std::vector<ChainPositionRecord>> per_replicate(cfg.replicates);
  const Rng root(cfg.seed);

  parallel_for(cfg.threads, cfg.replicates, [&](int r) {
    const Rng rep = root.child(substream::kReplicate, static_cast<std::uint64_t>(r));
    Rng inst_rng = rep.child(substream::kInstance);
    Rng data_rng = rep.child(substream::kData);

    std::vector<double> weights(p), sigmas(p + 1);
    for (int k = 0; k < p; ++k) weights[k] = cfg.weight_dist.sample(inst_rng);
    for (int k = 0; k <= p; ++k) sigmas[k] = cfg.sigma_dist.sample(inst_rng);

    const std::vector<double> variances = chain_variances(weights, sigmas);

    AnmInstance inst{Dag::chain(p + 1), Eigen::MatrixXd::Zero(p + 1, p + 1),
                     Eigen::VectorXd(p + 1), cfg.noise_family};
    for (int k = 0; k < p; ++k) inst.weights(k, k + 1) = weights[k];
    for (int k = 0; k <= p; ++k) inst.sigma(k) = sigmas[k];
    const Dataset data = standardize(sample_data(inst, cfg.n, data_rng));
    const std::vector<double> r2 = r2_criterion(data);

    auto& rows = per_replicate[r];
    rows.resize(p + 1);
    double log_sum = 0.0;
    const double sigma0_sq = sigmas[0] * sigmas[0];
    for (int pos = 0; pos <= p; ++pos) {
      auto& row = rows[pos];
      row.replicate = r;
      row.position = pos;
      row.weight = pos == 0 ? 0.0 : weights[pos - 1];
      row.variance = variances[pos];
      if (pos > 0) log_sum += std::log(std::abs(weights[pos - 1]));
      row.lower_bound = sigma0_sq * log_sum;
      row.cev = pos == 0 ? 0.0
                         : weights[pos - 1] * weights[pos - 1] * variances[pos - 1] /
                               variances[pos];
      row.r2 = r2[pos];
    }
  });

  std::vector<ChainPositionRecord> records;
  records.reserve(static_cast<size_t>(cfg.replicates) * (p + 1));
  for (const auto& rows : per_replicate) {
    records.insert(records.end(), rows.begin(), rows.end());
  }
  return records;
}

void write_chain_csv(std::ostream& out, const std::vector<ChainPositionRecord>& records) {
  out << "replicate,position,weight,variance,lower_bound,cev,r2\n";
  for (const auto& r : records) {
    out << r.replicate << "," << r.position << "," << format_double(r.weight) << ","
        << format_double(r.variance) << "," << format_double(r.lower_bound) << ","
        << format_double(r.cev) << "," << format_double(r.r2) << "\n";
  }
}

// ---------------------------------------------------------------------------

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  SweepConfig cfg;
  if (j.contains("graph_models")) {
    cfg.graph_models = j["graph_models"].get<std::vector<std::string>>();
  }
  cfg.d = j.value("d", cfg.d);
  if (j.contains("gammas")) cfg.gammas = j["gammas"].get<std::vector<double>>();
  if (j.contains("elogv_targets")) {
    cfg.elogv_targets = j["elogv_targets"].get<std::vector<double>>();
  }
  cfg.weight_inner = j.value("weight_inner", cfg.weight_inner);
  if (j.contains("noise_family")) {
    cfg.noise_family = noise_family_from_name(j["noise_family"].get<std::string>());
  }
  if (j.contains("sigma_dist")) cfg.sigma_dist = sigma_dist_from_json(j["sigma_dist"]);
  cfg.n = j.value("n", cfg.n);
  cfg.replicates = j.value("replicates", cfg.replicates);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("weighting")) {
    cfg.weighting = weighting_from_name(j["weighting"].get<std::string>());
  }
  cfg.tie_tol = j.value("tie_tol", cfg.tie_tol);
  cfg.threads = j.value("threads", cfg.threads);
  return cfg;
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json j;
  j["graph_models"] = graph_models;
  j["d"] = d;
  j["gammas"] = gammas;
  j["elogv_targets"] = elogv_targets;
  j["weight_inner"] = weight_inner;
  j["noise_family"] = noise_family_name(noise_family);
  j["sigma_dist"] = sigma_dist_to_json(sigma_dist);
  j["n"] = n;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["weighting"] = weighting_name(weighting);
  j["tie_tol"] = tie_tol;
  j["threads"] = threads;
  return j;
}

std::vector<SweepCell> sweep_heatmap(const SweepConfig& cfg) {
  if (cfg.elogv_targets.empty()) {
    throw std::invalid_argument("sweep: no E[ln|V|] targets given");
  }
  if (cfg.replicates < 1) throw std::invalid_argument("sweep: replicates must be >= 1");

  std::vector<SweepCell> cells;
  for (const auto& model : cfg.graph_models) {
    for (const double gamma : cfg.gammas) {
      for (const double target : cfg.elogv_targets) {
        SweepCell cell;
        cell.graph_model = model;
        cell.gamma = gamma;
        cell.elogv_target = target;
        cell.alpha = solve_alpha_for_target(target, cfg.weight_inner);
        cells.push_back(cell);
      }
    }
  }

  struct CellSums {
    double v_r2 = 0, v_var = 0, v_cev = 0;
    long long edges = 0;
    int done = 0, skipped = 0;
  };
  std::vector<CellSums> sums(cells.size());
  std::vector<std::mutex> cell_mutex(cells.size());
  const Rng root(cfg.seed);

  const int total = static_cast<int>(cells.size()) * cfg.replicates;
  parallel_for(cfg.threads, total, [&](int item) {
    const int ci = item / cfg.replicates;
    const int r = item % cfg.replicates;
    const auto& cell = cells[ci];

    ExperimentConfig ecfg;
    ecfg.graph_model = cell.graph_model;
    ecfg.d = cfg.d;
    ecfg.gamma = cell.gamma;
    ecfg.noise_family = cfg.noise_family;
    ecfg.sigma_dist = cfg.sigma_dist;
    ecfg.weight_dist = WeightDist{cfg.weight_inner, cell.alpha};
    ecfg.n = cfg.n;
    ecfg.validate();

    const Rng cell_rng = root.child(substream::kCell, static_cast<std::uint64_t>(ci));
    const Rng rep = cell_rng.child(substream::kReplicate, static_cast<std::uint64_t>(r));
    Rng graph_rng = rep.child(substream::kGraph);
    Rng inst_rng = rep.child(substream::kInstance);
    Rng data_rng = rep.child(substream::kData);

    const Dag g = ecfg.sample_graph(graph_rng);
    const NoiseSpec noise{cfg.noise_family, cfg.sigma_dist};
    const AnmInstance inst = sample_instance(g, ecfg.weight_dist, noise, inst_rng);
    const Dataset data = sample_data(inst, cfg.n, data_rng);

    double v_r2 = 0, v_var = 0, v_cev = 0;
    bool ok = true;
    try {
      const PathLengthIndex index = path_length_index(g);
      v_r2 = sortability(r2_criterion(data), index, cfg.weighting, cfg.tie_tol, "r2").value;
      v_var =
          sortability(var_criterion(data), index, cfg.weighting, cfg.tie_tol, "var").value;
      v_cev = sortability(cev_criterion(data, g), index, cfg.weighting, cfg.tie_tol,
                          "cev").value;
    } catch (const DegenerateColumnError&) {
      ok = false;
    } catch (const UndefinedSortabilityError&) {
      ok = false;
    }

    std::lock_guard<std::mutex> lock(cell_mutex[ci]);
    if (ok) {
      auto& s = sums[ci];
      s.v_r2 += v_r2;
      s.v_var += v_var;
      s.v_cev += v_cev;
      s.edges += g.edge_count();
      ++s.done;
    } else {
      ++sums[ci].skipped;
    }
  });

  for (size_t ci = 0; ci < cells.size(); ++ci) {
    auto& cell = cells[ci];
    const auto& s = sums[ci];
    cell.replicates = s.done;
    cell.skipped = s.skipped;
    if (s.done > 0) {
      cell.mean_v_r2 = s.v_r2 / s.done;
      cell.mean_v_var = s.v_var / s.done;
      cell.mean_v_cev = s.v_cev / s.done;
      cell.mean_edge_count = static_cast<int>(s.edges / s.done);
    }
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "graph_model,gamma,elogv_target,alpha,replicates,skipped,mean_edge_count,"
         "mean_v_r2,mean_v_var,mean_v_cev\n";
  for (const auto& c : cells) {
    out << c.graph_model << "," << format_double(c.gamma) << ","
        << format_double(c.elogv_target) << "," << format_double(c.alpha) << ","
        << c.replicates << "," << c.skipped << "," << c.mean_edge_count << ","
        << format_double(c.mean_v_r2) << "," << format_double(c.mean_v_var) << ","
        << format_double(c.mean_v_cev) << "\n";
  }
}

// ---------------------------------------------------------------------------

CounterexampleReport counterexample_report() {
  // X1 = N1; X2 = X1/sqrt(2) + N2; X3 = (X1+X2)/sqrt(4+2*sqrt(2)) + N3;
  // X4 = (X1+X2+X3)/sqrt(6+4a+8b) + N4, Var(N1)=1, Var(N2..4)=1/2.
  const double sqrt2 = std::sqrt(2.0);
  const double a = 1.0 / sqrt2;
  const double w3 = 1.0 / std::sqrt(4.0 + 2.0 * sqrt2);
  const double b = (1.0 + a) * w3;
  const double denom4 = std::sqrt(6.0 + 4.0 * a + 8.0 * b);
  const double w4 = 1.0 / denom4;
  const double c = (1.0 + a + b) / denom4;
  const double e = (1.0 + 2.0 * b) / denom4;

  const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {1, 2},
                                                  {0, 3}, {1, 3}, {2, 3}};
  AnmInstance inst{Dag(4, edges), Eigen::MatrixXd::Zero(4, 4), Eigen::VectorXd(4),
                   NoiseFamily::kGaussian};
  inst.weights(0, 1) = a;
  inst.weights(0, 2) = inst.weights(1, 2) = w3;
  inst.weights(0, 3) = inst.weights(1, 3) = inst.weights(2, 3) = w4;
  inst.sigma << 1.0, 1.0 / sqrt2, 1.0 / sqrt2, 1.0 / sqrt2;

  CounterexampleReport report{
      inst, Eigen::MatrixXd(4, 4), Eigen::MatrixXd(4, 4), {}, {}, {}, {}};
  report.covariance << 1, a, b, c,
                       a, 1, b, c,
                       b, b, 1, e,
                       c, c, e, 1;
  report.precision =
      Eigen::LLT<Eigen::MatrixXd>(report.covariance)
          .solve(Eigen::MatrixXd::Identity(4, 4));
  report.r2 = analytic_r2_from_covariance(report.covariance);

  // The exact analytic tie between nodes 0 and 1 lands within rounding
  // error of equality; a small tolerance recovers the 1/2 score.
  const double tie_tol = 1e-9;
  const PathLengthIndex index = path_length_index(inst.dag);
  report.unique_length =
      sortability(report.r2, index, Weighting::kUniqueLength, tie_tol, "r2_analytic");
  report.path_existence =
      sortability(report.r2, index, Weighting::kPathExistence, tie_tol, "r2_analytic");
  report.path_count =
      sortability(report.r2, index, Weighting::kPathCount, tie_tol, "r2_analytic");
  return report;
}

nlohmann::json counterexample_to_json(const CounterexampleReport& report) {
  nlohmann::json j;
  auto matrix = [](const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["graph"] = graph_to_json(report.instance.dag, &report.instance.weights);
  j["noise_variances"] = {report.instance.sigma(0) * report.instance.sigma(0),
                          report.instance.sigma(1) * report.instance.sigma(1),
                          report.instance.sigma(2) * report.instance.sigma(2),
                          report.instance.sigma(3) * report.instance.sigma(3)};
  j["covariance"] = matrix(report.covariance);
  j["precision"] = matrix(report.precision);
  j["r2"] = report.r2;
  j["sortability"] = {sortability_report_to_json(report.unique_length),
                      sortability_report_to_json(report.path_existence),
                      sortability_report_to_json(report.path_count)};
  return j;
}

// ---------------------------------------------------------------------------

AuditReport audit_dataset(const AuditConfig& cfg) {
  if (cfg.bootstrap < 0) throw std::invalid_argument("audit: bootstrap must be >= 0");
  const Dataset data = read_dataset_csv(cfg.data_path);

  AuditReport report;
  report.n = data.n();
  report.d = data.d();
  report.bootstrap = cfg.bootstrap;
  report.tau_var = var_criterion(data);
  report.tau_r2 = r2_criterion(data);

  std::optional<LoadedGraph> graph;
  std::optional<PathLengthIndex> index;
  if (cfg.graph_path) {
    graph = read_graph_json(*cfg.graph_path);
    if (graph->dag.node_count() != data.d()) {
      throw std::invalid_argument(
          "audit: graph has " + std::to_string(graph->dag.node_count()) +
          " nodes but the dataset has " + std::to_string(data.d()) + " columns");
    }
    report.has_graph = true;
    report.edge_count = graph->dag.edge_count();
    index = path_length_index(graph->dag);
  }

  if (!report.has_graph) return report;  // no sortability without the graph

  auto compute_all = [&](const Dataset& ds) {
    std::vector<double> values(3);
    values[0] =
        sortability(r2_criterion(ds), *index, cfg.weighting, cfg.tie_tol, "r2").value;
    values[1] =
        sortability(var_criterion(ds), *index, cfg.weighting, cfg.tie_tol, "var").value;
    values[2] = sortability(cev_criterion(ds, graph->dag), *index, cfg.weighting,
                            cfg.tie_tol, "cev").value;
    return values;
  };

  const std::vector<double> full = compute_all(data);
  report.sortabilities = {{"r2", full[0], {}}, {"var", full[1], {}}, {"cev", full[2], {}}};

  const Rng root(cfg.seed);
  for (int b = 0; b < cfg.bootstrap; ++b) {
    Rng rng = root.child(substream::kBootstrap, static_cast<std::uint64_t>(b));
    Dataset sample;
    sample.names = data.names;
    sample.values.resize(data.n(), data.d());
    for (int i = 0; i < data.n(); ++i) {
      sample.values.row(i) = data.values.row(rng.uniform_int(data.n()));
    }
    try {
      const std::vector<double> values = compute_all(sample);
      for (size_t k = 0; k < 3; ++k) {
        report.sortabilities[k].bootstrap_values.push_back(values[k]);
      }
    } catch (const DegenerateColumnError&) {
      ++report.bootstrap_skipped;  // resample collapsed a column
    }
  }
  return report;
}

nlohmann::json audit_to_json(const AuditReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["d"] = report.d;
  j["has_graph"] = report.has_graph;
  if (report.has_graph) j["edge_count"] = report.edge_count;
  j["bootstrap"] = report.bootstrap;
  j["bootstrap_skipped"] = report.bootstrap_skipped;
  j["tau_var"] = report.tau_var;
  j["tau_r2"] = report.tau_r2;
  if (!report.has_graph) {
    j["note"] = "sortability requires a reference graph; only criterion vectors reported";
  }
  nlohmann::json sorts = nlohmann::json::array();
  for (const auto& s : report.sortabilities) {
    nlohmann::json js;
    js["criterion"] = s.criterion;
    js["full"] = s.full_value;
    if (!s.bootstrap_values.empty()) {
      double mn = s.bootstrap_values[0], mx = s.bootstrap_values[0], sum = 0;
      for (const double v : s.bootstrap_values) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        sum += v;
      }
      js["bootstrap"] = {{"mean", sum / s.bootstrap_values.size()},
                         {"min", mn},
                         {"max", mx},
                         {"values", s.bootstrap_values}};
    }
    sorts.push_back(std::move(js));
  }
  j["sortability"] = std::move(sorts);
  return j;
}

}  // namespace causalsort
