#include "causalsort/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "causalsort/sortability.hpp"

namespace causalsort {

namespace {

// Ascending stable argsort; ties broken by node index for determinism.
std::vector<int> argsort_ascending(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] < scores[b]; });
  return order;
}

}  // namespace

WeightEstimate regress_along_order(const Dataset& data, const std::vector<int>& order,
                                   const std::vector<double>& scores,
                                   EdgePenalty penalty, const LassoOptions& options) {
  const int d = data.d();
  if (static_cast<int>(order.size()) != d) {
    throw std::invalid_argument("regress_along_order: order size mismatch");
  }
  WeightEstimate est{Eigen::MatrixXd::Zero(d, d), order, scores};
  for (int pos = 1; pos < d; ++pos) {
    const int t = order[pos];
    Eigen::MatrixXd x(data.n(), pos);
    for (int k = 0; k < pos; ++k) x.col(k) = data.values.col(order[k]);
    Eigen::VectorXd coef;
    if (penalty == EdgePenalty::kLassoBic) {
      coef = lasso_path_bic(x, data.values.col(t), options).fit.coefficients;
    } else {
      coef = ols_fit(x, data.values.col(t)).coefficients;
    }
    for (int k = 0; k < pos; ++k) est.w_hat(order[k], t) = coef(k);
  }
  return est;
}

WeightEstimate r2_sort_n_regress(const Dataset& data, const LassoOptions& options) {
  const int d = data.d();
  if (d < 1) throw std::invalid_argument("r2_sort_n_regress: empty dataset");
  std::vector<double> scores(d, 0.0);
  if (d >= 2) scores = r2_criterion(data);
  return regress_along_order(data, argsort_ascending(scores), scores,
                             EdgePenalty::kLassoBic, options);
}

WeightEstimate var_sort_n_regress(const Dataset& data, const LassoOptions& options) {
  const int d = data.d();
  if (d < 1) throw std::invalid_argument("var_sort_n_regress: empty dataset");
  const std::vector<double> scores = var_criterion(data);
  return regress_along_order(data, argsort_ascending(scores), scores,
                             EdgePenalty::kLassoBic, options);
}

WeightEstimate random_regress(const Dataset& data, Rng& rng,
                              const LassoOptions& options) {
  const int d = data.d();
  if (d < 1) throw std::invalid_argument("random_regress: empty dataset");
  // A random permutation rather than random scores; equivalent and simpler.
  const std::vector<int> order = rng.permutation(d);
  std::vector<double> scores(d);
  for (int pos = 0; pos < d; ++pos) scores[order[pos]] = pos;
  return regress_along_order(data, order, scores, EdgePenalty::kLassoBic, options);
}

Dag threshold_to_dag(const WeightEstimate& estimate, double eps) {
  if (eps < 0) throw std::invalid_argument("threshold_to_dag: eps must be >= 0");
  const int d = static_cast<int>(estimate.w_hat.rows());
  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < d; ++s) {
    for (int t = 0; t < d; ++t) {
      if (std::abs(estimate.w_hat(s, t)) > eps) edges.emplace_back(s, t);
    }
  }
  return Dag(d, edges);
}

}  // namespace causalsort
