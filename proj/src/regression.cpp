#include "causalsort/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "causalsort/errors.hpp"

namespace causalsort {

LinearFit ols_fit(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& target) {
  const int n = static_cast<int>(target.size());
  const int p = static_cast<int>(predictors.cols());
  if (predictors.rows() != n) {
    throw std::invalid_argument("ols_fit: predictor/target row mismatch");
  }
  if (n <= p + 1) {
    throw std::invalid_argument("ols_fit: need n > #predictors + 1, got n=" +
                                std::to_string(n) + " p=" + std::to_string(p));
  }

  LinearFit fit;
  fit.n = n;
  const double y_mean = target.mean();
  if (p == 0) {
    fit.coefficients.resize(0);
    fit.intercept = y_mean;
    fit.rss = (target.array() - y_mean).square().sum();
    return fit;
  }

  // Center columns and target: the intercept drops out and is recovered
  // from the means afterwards.
  Eigen::MatrixXd xc = predictors;
  Eigen::VectorXd col_mean(p);
  for (int c = 0; c < p; ++c) {
    col_mean(c) = xc.col(c).mean();
    xc.col(c).array() -= col_mean(c);
  }
  Eigen::VectorXd yc = target.array() - y_mean;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(xc);
  fit.coefficients = cod.solve(yc);
  fit.rank_deficient = cod.rank() < p;
  fit.intercept = y_mean - col_mean.dot(fit.coefficients);
  fit.rss = (yc - xc * fit.coefficients).squaredNorm();
  return fit;
}

double r_squared(const Dataset& data, int target, std::span<const int> predictors) {
  const int d = data.d();
  if (target < 0 || target >= d) throw std::invalid_argument("r_squared: target out of range");
  for (const int s : predictors) {
    if (s < 0 || s >= d) throw std::invalid_argument("r_squared: predictor out of range");
    if (s == target) throw std::invalid_argument("r_squared: target cannot be a predictor");
  }
  const double var_y = population_variance(data.values.col(target));
  if (!(var_y > 0)) throw DegenerateColumnError(target, data.column_name(target));

  Eigen::MatrixXd x(data.n(), predictors.size());
  for (size_t k = 0; k < predictors.size(); ++k) x.col(k) = data.values.col(predictors[k]);
  const LinearFit fit = ols_fit(x, data.values.col(target));
  const double r2 = 1.0 - (fit.rss / fit.n) / var_y;
  return std::clamp(r2, 0.0, 1.0);
}

namespace {

double soft_threshold(double rho, double lambda) {
  if (rho > lambda) return rho - lambda;
  if (rho < -lambda) return rho + lambda;
  return 0.0;
}

}  // namespace

std::vector<LassoPathPoint> lasso_path(const Eigen::MatrixXd& predictors,
                                       const Eigen::VectorXd& target,
                                       const LassoOptions& options,
                                       std::span<const double> lambdas,
                                       std::vector<double>* objective_trace) {
  const int n = static_cast<int>(target.size());
  const int p = static_cast<int>(predictors.cols());
  if (predictors.rows() != n) {
    throw std::invalid_argument("lasso_path: predictor/target row mismatch");
  }
  if (n <= 2) throw std::invalid_argument("lasso_path: need n > 2");

  const double y_mean = target.mean();
  Eigen::VectorXd yc = target.array() - y_mean;

  // Standardize predictors; constant columns stay out of the active set.
  Eigen::MatrixXd xs(n, p);
  Eigen::VectorXd col_mean(p), col_sd(p);
  std::vector<bool> usable(p, false);
  for (int c = 0; c < p; ++c) {
    col_mean(c) = predictors.col(c).mean();
    const double var = population_variance(predictors.col(c));
    col_sd(c) = std::sqrt(var);
    if (var > 0) {
      usable[c] = true;
      xs.col(c) = (predictors.col(c).array() - col_mean(c)) / col_sd(c);
    } else {
      xs.col(c).setZero();
    }
  }

  double lambda_max = 0.0;
  for (int c = 0; c < p; ++c) {
    if (usable[c]) lambda_max = std::max(lambda_max, std::abs(xs.col(c).dot(yc)) / n);
  }

  std::vector<double> grid;
  if (!lambdas.empty()) {
    grid.assign(lambdas.begin(), lambdas.end());
  } else if (lambda_max <= 0 || p == 0) {
    grid = {0.0};  // nothing correlates with the target; only the null fit
  } else {
    const double ratio = std::pow(options.lambda_min_ratio,
                                  1.0 / std::max(1, options.grid_size - 1));
    double lam = lambda_max;
    for (int k = 0; k < options.grid_size; ++k, lam *= ratio) grid.push_back(lam);
  }

  std::vector<LassoPathPoint> path;
  path.reserve(grid.size());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);  // standardized scale
  Eigen::VectorXd residual = yc;

  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const double lambda = grid[gi];
    const bool trace = objective_trace && gi + 1 == grid.size();
    if (trace) objective_trace->clear();
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      double max_delta = 0.0;
      for (int c = 0; c < p; ++c) {
        if (!usable[c]) continue;
        const double old = beta(c);
        const double rho = xs.col(c).dot(residual) / n + old;
        const double updated = soft_threshold(rho, lambda);
        if (updated != old) {
          residual += xs.col(c) * (old - updated);
          beta(c) = updated;
          max_delta = std::max(max_delta, std::abs(updated - old));
        }
      }
      if (trace) {
        objective_trace->push_back(residual.squaredNorm() / (2.0 * n) +
                                   lambda * beta.lpNorm<1>());
      }
      if (max_delta < options.tol) break;
    }

    LassoPathPoint point;
    point.lambda = lambda;
    point.coefficients = Eigen::VectorXd::Zero(p);
    for (int c = 0; c < p; ++c) {
      if (beta(c) != 0.0) {
        point.coefficients(c) = beta(c) / col_sd(c);
        ++point.nonzero;
      }
    }
    point.intercept = y_mean - col_mean.dot(point.coefficients);
    point.rss = residual.squaredNorm();
    const double k = point.nonzero + 1;  // intercept counted
    point.bic = n * std::log(std::max(point.rss, 1e-300) / n) + k * std::log(double(n));
    path.push_back(std::move(point));
  }
  return path;
}

LassoFit lasso_path_bic(const Eigen::MatrixXd& predictors,
                        const Eigen::VectorXd& target,
                        const LassoOptions& options) {
  const auto path = lasso_path(predictors, target, options);
  size_t best = 0;
  for (size_t k = 1; k < path.size(); ++k) {
    if (path[k].bic < path[best].bic) best = k;
  }
  const auto& point = path[best];
  LassoFit out;
  out.fit.coefficients = point.coefficients;
  out.fit.intercept = point.intercept;
  out.fit.rss = point.rss;
  out.fit.n = static_cast<int>(target.size());
  out.lambda = point.lambda;
  out.bic = point.bic;
  return out;
}

}  // namespace causalsort
