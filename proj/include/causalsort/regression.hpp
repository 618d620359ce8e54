#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "causalsort/anm.hpp"

namespace causalsort {

// Least-squares fit with intercept.
struct LinearFit {
  Eigen::VectorXd coefficients;  // one per predictor column
  double intercept = 0.0;
  double rss = 0.0;
  int n = 0;
  bool rank_deficient = false;  // solved via minimum-norm pseudoinverse
};

// OLS with intercept. Rank-deficient designs are solved with the
// minimum-norm solution (centered complete orthogonal decomposition) and
// flagged; near-deterministic high-R^2 regimes routinely produce them.
// Requires n > #predictors + 1.
LinearFit ols_fit(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& target);

// In-sample coefficient of determination of column `target` regressed on
// columns S (with intercept), 1/n variance convention, clipped to [0,1].
double r_squared(const Dataset& data, int target, std::span<const int> predictors);

struct LassoOptions {
  int grid_size = 100;            // geometric lambda grid points
  double lambda_min_ratio = 1e-3; // grid spans [lambda_max*ratio, lambda_max]
  double tol = 1e-8;              // max coefficient change per sweep
  int max_sweeps = 10000;
};

struct LassoPathPoint {
  double lambda = 0.0;
  Eigen::VectorXd coefficients;  // original scale
  double intercept = 0.0;
  double rss = 0.0;
  double bic = 0.0;
  int nonzero = 0;
};

struct LassoFit {
  LinearFit fit;
  double lambda = 0.0;
  double bic = 0.0;
};

// Coordinate descent over a lambda grid, warm-started from large to small.
// Predictors are standardized internally and coefficients back-transformed.
// `lambdas` overrides the default geometric grid when nonempty (values are
// processed in the order given). `objective_trace`, when provided, receives
// the penalized objective after every sweep of the last lambda processed.
std::vector<LassoPathPoint> lasso_path(const Eigen::MatrixXd& predictors,
                                       const Eigen::VectorXd& target,
                                       const LassoOptions& options = {},
                                       std::span<const double> lambdas = {},
                                       std::vector<double>* objective_trace = nullptr);

// The path point minimizing BIC = n*ln(rss/n) + k*ln(n) with k = #nonzero
// coefficients + 1 (intercept counted). Requires n > 2.
LassoFit lasso_path_bic(const Eigen::MatrixXd& predictors,
                        const Eigen::VectorXd& target,
                        const LassoOptions& options = {});

}  // namespace causalsort
