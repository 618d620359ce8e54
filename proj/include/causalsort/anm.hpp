#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "causalsort/dag.hpp"
#include "causalsort/rng.hpp"

namespace causalsort {

// Edge-weight distribution Unif((-hi,-lo) ∪ (lo,hi)), 0 < lo < hi.
struct WeightDist {
  double lo = 0.5;
  double hi = 2.0;

  void validate() const;
  double sample(Rng& rng) const { return rng.two_interval(lo, hi); }
};

enum class NoiseFamily { kGaussian, kUniform };

NoiseFamily noise_family_from_name(const std::string& name);
std::string noise_family_name(NoiseFamily family);

// Distribution of per-node noise standard deviations.
struct SigmaDist {
  enum class Kind { kUniform, kExponential };

  Kind kind = Kind::kUniform;
  double lo = 0.5;    // uniform bounds
  double hi = 2.0;
  double rate = 1.0;  // exponential rate; mean is 1/rate

  static SigmaDist Uniform(double lo, double hi);
  static SigmaDist Exponential(double rate);

  void validate() const;
  double sample(Rng& rng) const;
};

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::kGaussian;
  SigmaDist sigma_dist;

  // One noise draw with standard deviation phi. The uniform family is
  // Unif(-sqrt(3)*phi, sqrt(3)*phi) so its standard deviation is phi.
  double sample_noise(double phi, Rng& rng) const;
};

// A linear ANM: DAG, edge weights on its edges, and per-node noise
// standard deviations. X = W^T X + N.
struct AnmInstance {
  Dag dag;
  Eigen::MatrixXd weights;  // support is exactly the edge set
  Eigen::VectorXd sigma;    // positive
  NoiseFamily noise_family = NoiseFamily::kGaussian;

  int node_count() const { return dag.node_count(); }
};

struct Dataset {
  Eigen::MatrixXd values;          // n x d
  std::vector<std::string> names;  // empty or one per column

  int n() const { return static_cast<int>(values.rows()); }
  int d() const { return static_cast<int>(values.cols()); }
  std::string column_name(int c) const;
};

AnmInstance sample_instance(const Dag& g, const WeightDist& wdist,
                            const NoiseSpec& noise, Rng& rng);

// n iid observations. Noise is drawn per observation and propagated in
// topological order, which is distribution-identical to applying
// (Id - W^T)^{-1} to the noise vector.
Dataset sample_data(const AnmInstance& inst, int n, Rng& rng);

// Per-column transform to empirical mean 0 and empirical variance 1
// (1/n convention). Throws DegenerateColumnError on constant columns.
Dataset standardize(const Dataset& data);

// Exact population covariance (Id - W^T)^{-1} diag(sigma^2) (Id - W)^{-1}.
Eigen::MatrixXd analytic_covariance(const AnmInstance& inst);

// Closed-form E[log|V|] for V ~ Unif((-hi,-lo) ∪ (lo,hi)):
// (hi ln hi - hi - lo ln lo + lo) / (hi - lo).
double expected_log_abs_weight(const WeightDist& wdist);

// Outer bound `a` such that E[log|V|] of Unif(±(inner_bound, a)) hits the
// target, by bisection (the map is continuous and increasing in `a`).
// Targets at or below log(inner_bound) are unachievable.
double solve_alpha_for_target(double target, double inner_bound);

// sigma0^2 * sum_j log|w_j|; lower bound on the terminal variance of a
// causal chain with the given edge weights and root noise sd sigma0.
double chain_variance_lower_bound(std::span<const double> weights, double sigma0);

// Exact node variances along a chain X_0 -> X_1 -> ... via the recursion
// Var(X_t) = w_t^2 Var(X_{t-1}) + sigma_t^2. sigmas has one more entry
// than weights.
std::vector<double> chain_variances(std::span<const double> weights,
                                    std::span<const double> sigmas);

// Population variance (1/n) of a column; shared convention across modules.
double population_variance(const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace causalsort
