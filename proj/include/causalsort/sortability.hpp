#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "causalsort/anm.hpp"
#include "causalsort/dag.hpp"

namespace causalsort {

// How cause-effect pairs are counted in the sortability denominator:
// once per (pair, path length) with at least one path of that length
// (kUniqueLength), once per connected pair (kPathExistence), or once per
// directed path (kPathCount).
enum class Weighting { kUniqueLength, kPathExistence, kPathCount };

std::string weighting_name(Weighting w);
Weighting weighting_from_name(const std::string& name);

struct SortabilityReport {
  std::string criterion;  // label: "var", "r2", "cev", ...
  Weighting weighting = Weighting::kUniqueLength;
  std::vector<double> tau;
  double value = 0.0;  // in [0, 1]
  // Exact rational: value = numerator_halves / (2 * term_count). Terms score
  // 2 (increasing), 1 (tied), 0 (decreasing) half-units each, multiplied by
  // the path count under kPathCount.
  std::uint64_t numerator_halves = 0;
  std::uint64_t term_count = 0;
  std::uint64_t tie_count = 0;  // (pair, length) terms scored 1/2
  double tie_tolerance = 0.0;
};

// tau-sortability of the criterion vector `tau` on graph `g`. Values within
// `tie_tol` of each other count as tied (default: exact equality only).
// Throws UndefinedSortabilityError when the graph has no directed paths and
// std::invalid_argument when kPathCount meets saturated path counts.
SortabilityReport sortability(std::span<const double> tau, const Dag& g,
                              Weighting weighting, double tie_tol = 0.0,
                              const std::string& criterion = "tau");

// Same, reusing a precomputed path census of g.
SortabilityReport sortability(std::span<const double> tau, const PathLengthIndex& index,
                              Weighting weighting, double tie_tol = 0.0,
                              const std::string& criterion = "tau");

// tau(t) = empirical variance of column t (1/n convention).
std::vector<double> var_criterion(const Dataset& data);

// tau(t) = R^2 of column t regressed on all remaining columns.
// Requires d >= 2 and n > d.
std::vector<double> r2_criterion(const Dataset& data);

// tau(t) = R^2 of column t regressed on its parents in g; roots get 0.
std::vector<double> cev_criterion(const Dataset& data, const Dag& g);

// Exact population R^2 per node from a covariance matrix:
// R^2_t = 1 - 1 / ((Sigma^{-1})_tt * Sigma_tt).
std::vector<double> analytic_r2_from_covariance(const Eigen::MatrixXd& cov);

}  // namespace causalsort
