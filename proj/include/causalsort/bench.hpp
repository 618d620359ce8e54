#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "causalsort/anm.hpp"
#include "causalsort/dag.hpp"
#include "causalsort/sortability.hpp"
#include "causalsort/stats.hpp"

namespace causalsort {

// Full parameterization of a benchmark run. Defaults mirror the standard
// synthetic setting: ER(20, 40), Gaussian noise, sigma ~ Unif(0.5, 2),
// weights ~ Unif(±(0.5, 2)), n = 1000, standardized data.
struct ExperimentConfig {
  std::string graph_model = "er";  // "er" | "sf"
  int d = 20;
  double gamma = 2.0;  // average in-degree; integer required for "sf"
  NoiseFamily noise_family = NoiseFamily::kGaussian;
  SigmaDist sigma_dist = SigmaDist::Uniform(0.5, 2.0);
  WeightDist weight_dist{0.5, 2.0};
  int n = 1000;
  int replicates = 500;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms = {"r2_sortnregress", "var_sortnregress",
                                         "random_regress"};
  Weighting weighting = Weighting::kUniqueLength;
  bool standardize_data = true;
  double threshold_eps = 0.0;
  double tie_tol = 0.0;
  double window_width = 0.1;
  std::vector<double> window_centers;  // empty -> 0.05, 0.10, ..., 0.95
  int threads = 1;

  void validate() const;
  Dag sample_graph(Rng& rng) const;
  int er_edge_count() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct AlgorithmResult {
  std::string algorithm;
  int sid = 0;
  int shd = 0;
  int edges = 0;  // edges in the thresholded estimate
};

struct BenchRecord {
  int replicate = 0;
  std::uint64_t seed = 0;
  bool skipped = false;
  std::string skip_reason;
  int edge_count = 0;  // true graph
  double v_var = 0.0, v_r2 = 0.0, v_cev = 0.0;
  std::vector<AlgorithmResult> algorithms;
};

struct BenchResult {
  ExperimentConfig config;
  std::vector<BenchRecord> records;
  int skipped_count = 0;
};

// One replicate: sample graph -> instance -> data, compute the three
// sortabilities, run each configured algorithm, score SID/SHD against the
// truth. Deterministic given config.seed, independent of thread count.
// Replicates with degenerate data are returned skipped, not dropped.
BenchResult run_benchmark(const ExperimentConfig& cfg);

void write_bench_csv(std::ostream& out, const BenchResult& result);
std::string bench_csv_string(const BenchResult& result);

// Window-averaged SID curve over v_r2 for one algorithm.
std::vector<CurvePoint> bench_sid_curve(const BenchResult& result,
                                        const std::string& algorithm);

// ---------------------------------------------------------------------------

struct ChainConfig {
  int length = 50;  // p: number of edges; nodes are 0..p
  int replicates = 30;
  WeightDist weight_dist{0.5, 2.0};
  SigmaDist sigma_dist = SigmaDist::Uniform(0.5, 2.0);
  NoiseFamily noise_family = NoiseFamily::kGaussian;
  int n = 5000;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ChainPositionRecord {
  int replicate = 0;
  int position = 0;         // 0..p along the chain
  double weight = 0.0;      // incoming edge weight; 0 at the root
  double variance = 0.0;    // exact analytic Var(X_position)
  double lower_bound = 0.0; // sigma_0^2 * sum_{j<position} log|w_j|
  double cev = 0.0;         // analytic cause-explained variance fraction
  double r2 = 0.0;          // finite-sample R^2 given all other nodes
};

// Sampled causal chains: exact variances from the recursion
// Var(X_t) = w_t^2 Var(X_{t-1}) + sigma_t^2, the log-weight lower bound,
// analytic CEV, and the finite-sample R^2 of every node given the rest.
std::vector<ChainPositionRecord> chain_experiment(const ChainConfig& cfg);

void write_chain_csv(std::ostream& out, const std::vector<ChainPositionRecord>& records);

// ---------------------------------------------------------------------------

struct SweepConfig {
  std::vector<std::string> graph_models = {"er"};
  int d = 50;
  std::vector<double> gammas = {2.0};
  std::vector<double> elogv_targets;  // targets for E[ln|V|]
  double weight_inner = 0.1;          // fixed inner bound of the weight support
  NoiseFamily noise_family = NoiseFamily::kGaussian;
  SigmaDist sigma_dist = SigmaDist::Uniform(0.5, 2.0);
  int n = 1000;
  int replicates = 20;  // per cell
  std::uint64_t seed = 1;
  Weighting weighting = Weighting::kUniqueLength;
  double tie_tol = 0.0;
  int threads = 1;

  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SweepCell {
  std::string graph_model;
  double gamma = 0.0;
  double elogv_target = 0.0;
  double alpha = 0.0;  // solved outer weight bound
  int replicates = 0;
  int skipped = 0;
  int mean_edge_count = 0;
  double mean_v_r2 = 0.0;
  double mean_v_var = 0.0;
  double mean_v_cev = 0.0;
};

// Mean sortabilities over a (graph model, gamma, E[ln|V|] target) grid.
std::vector<SweepCell> sweep_heatmap(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

// ---------------------------------------------------------------------------

// The 4-node equal-CEV counterexample: unit marginal variances, constant
// cause-explained variance fraction 1/2, yet descending R^2 along the
// causal order.
struct CounterexampleReport {
  AnmInstance instance;
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd precision;
  std::vector<double> r2;
  SortabilityReport unique_length;
  SortabilityReport path_existence;
  SortabilityReport path_count;
};

CounterexampleReport counterexample_report();
nlohmann::json counterexample_to_json(const CounterexampleReport& report);

// ---------------------------------------------------------------------------

struct AuditConfig {
  std::string data_path;
  std::optional<std::string> graph_path;
  int bootstrap = 30;
  std::uint64_t seed = 1;
  Weighting weighting = Weighting::kUniqueLength;
  double tie_tol = 0.0;
};

struct AuditSortability {
  std::string criterion;
  double full_value = 0.0;
  std::vector<double> bootstrap_values;
};

struct AuditReport {
  int n = 0;
  int d = 0;
  bool has_graph = false;
  int edge_count = -1;
  int bootstrap = 0;
  int bootstrap_skipped = 0;
  std::vector<double> tau_var;  // full-data criterion vectors
  std::vector<double> tau_r2;
  std::vector<AuditSortability> sortabilities;  // empty without a graph
};

// Sortability audit of an external dataset with bootstrap resampling.
// Sortability scalars require the reference graph; without one, only the
// per-column criterion vectors are reported.
AuditReport audit_dataset(const AuditConfig& cfg);
nlohmann::json audit_to_json(const AuditReport& report);

// ---------------------------------------------------------------------------

// Runs fn(0..count-1) on up to `threads` workers; exceptions propagate.
void parallel_for(int threads, int count, const std::function<void(int)>& fn);

}  // namespace causalsort
