#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "causalsort/anm.hpp"
#include "causalsort/dag.hpp"
#include "causalsort/discovery.hpp"
#include "causalsort/sortability.hpp"

namespace causalsort {

// Graph file format:
//   {"d": <int>, "edges": [[s,t],...], "weights": [[s,t,w],...]}
// with 0-based node indices; "weights" is optional.
struct LoadedGraph {
  Dag dag;
  std::optional<Eigen::MatrixXd> weights;
};

nlohmann::json graph_to_json(const Dag& g, const Eigen::MatrixXd* weights = nullptr);
LoadedGraph graph_from_json(const nlohmann::json& j);
void write_graph_json(const std::string& path, const Dag& g,
                      const Eigen::MatrixXd* weights = nullptr);
LoadedGraph read_graph_json(const std::string& path);

nlohmann::json estimate_to_json(const WeightEstimate& estimate);

// Dataset CSV: header row of column names, comma separated, decimal point,
// one observation per row. Values round-trip exactly (17 significant digits).
void write_dataset_csv(const std::string& path, const Dataset& data);
Dataset read_dataset_csv(const std::string& path);

// {criterion, weighting, value, ties, tau: [...]} plus the exact fraction.
nlohmann::json sortability_report_to_json(const SortabilityReport& report);

std::string format_double(double v);  // shortest exact round-trip decimal

}  // namespace causalsort
