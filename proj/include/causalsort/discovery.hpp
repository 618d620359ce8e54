#pragma once

#include <Eigen/Dense>
#include <vector>

#include "causalsort/anm.hpp"
#include "causalsort/dag.hpp"
#include "causalsort/regression.hpp"
#include "causalsort/rng.hpp"

namespace causalsort {

// Output of a sort-and-regress run: the weight matrix estimate, the
// candidate causal order used (position -> node), and the per-node
// criterion values that produced the order. w_hat is strictly upper
// triangular under `order`, so the estimate is acyclic by construction.
struct WeightEstimate {
  Eigen::MatrixXd w_hat;
  std::vector<int> order;
  std::vector<double> scores;
};

enum class EdgePenalty { kLassoBic, kNone };

// Shared second stage: regress each node onto its predecessors in `order`
// (L1+BIC by default, plain OLS with EdgePenalty::kNone).
WeightEstimate regress_along_order(const Dataset& data, const std::vector<int>& order,
                                   const std::vector<double>& scores,
                                   EdgePenalty penalty = EdgePenalty::kLassoBic,
                                   const LassoOptions& options = {});

// Order nodes by ascending R^2 given all other variables, then regress.
WeightEstimate r2_sort_n_regress(const Dataset& data, const LassoOptions& options = {});

// Order nodes by ascending empirical variance, then regress.
WeightEstimate var_sort_n_regress(const Dataset& data, const LassoOptions& options = {});

// Order nodes by a uniformly random permutation, then regress.
WeightEstimate random_regress(const Dataset& data, Rng& rng,
                              const LassoOptions& options = {});

// Binary graph with an edge wherever |w_hat| > eps.
Dag threshold_to_dag(const WeightEstimate& estimate, double eps = 0.0);

}  // namespace causalsort
