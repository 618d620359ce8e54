#include "causalsort/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "causalsort/errors.hpp"

namespace causalsort {

std::string format_double(double v) {
  // Shortest representation that round-trips; %.17g always does, shorter
  // forms are preferred when exact.
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

nlohmann::json graph_to_json(const Dag& g, const Eigen::MatrixXd* weights) {
  nlohmann::json j;
  j["d"] = g.node_count();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [s, t] : g.edges()) edges.push_back({s, t});
  j["edges"] = std::move(edges);
  if (weights != nullptr) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [s, t] : g.edges()) w.push_back({s, t, (*weights)(s, t)});
    j["weights"] = std::move(w);
  }
  return j;
}

LoadedGraph graph_from_json(const nlohmann::json& j) {
  if (!j.contains("d") || !j["d"].is_number_integer()) {
    throw ParseError("graph json: missing integer field 'd'");
  }
  const int d = j["d"].get<int>();
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) {
        throw ParseError("graph json: edge entries must be [s, t] pairs");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  LoadedGraph out{Dag(d, edges), std::nullopt};
  if (j.contains("weights")) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
    for (const auto& e : j["weights"]) {
      if (!e.is_array() || e.size() != 3) {
        throw ParseError("graph json: weight entries must be [s, t, w] triples");
      }
      const int s = e[0].get<int>(), t = e[1].get<int>();
      if (!out.dag.has_edge(s, t)) {
        throw ParseError("graph json: weight on missing edge " + std::to_string(s) +
                         "->" + std::to_string(t));
      }
      w(s, t) = e[2].get<double>();
    }
    out.weights = std::move(w);
  }
  return out;
}

void write_graph_json(const std::string& path, const Dag& g,
                      const Eigen::MatrixXd* weights) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << graph_to_json(g, weights).dump(2) << "\n";
}

LoadedGraph read_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  }
  return graph_from_json(j);
}

nlohmann::json estimate_to_json(const WeightEstimate& estimate) {
  const int d = static_cast<int>(estimate.w_hat.rows());
  std::vector<std::pair<int, int>> edges;
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t)
      if (estimate.w_hat(s, t) != 0.0) edges.emplace_back(s, t);
  nlohmann::json j = graph_to_json(Dag(d, edges), &estimate.w_hat);
  j["order"] = estimate.order;
  j["scores"] = estimate.scores;
  return j;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const int d = data.d();
  for (int c = 0; c < d; ++c) out << (c ? "," : "") << data.column_name(c);
  out << "\n";
  for (int i = 0; i < data.n(); ++i) {
    for (int c = 0; c < d; ++c) {
      if (c) out << ",";
      out << format_double(data.values(i, c));
    }
    out << "\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  Dataset data;
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw ParseError("csv: empty file", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  data.names = split_csv_line(line);
  const int d = static_cast<int>(data.names.size());
  if (d == 0) throw ParseError("csv: empty header", 1);

  std::vector<double> values;
  long rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d) {
      throw ParseError("csv: expected " + std::to_string(d) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (const auto& f : fields) {
      double v = 0;
      const char* begin = f.data();
      const char* end = begin + f.size();
      while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end) {
        throw ParseError("csv: invalid number '" + f + "'", line_no);
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (rows < 2) throw ParseError("csv: need at least 2 observations", line_no);
  data.values.resize(rows, d);
  for (long i = 0; i < rows; ++i)
    for (int c = 0; c < d; ++c) data.values(i, c) = values[i * d + c];
  return data;
}

nlohmann::json sortability_report_to_json(const SortabilityReport& report) {
  nlohmann::json j;
  j["criterion"] = report.criterion;
  j["weighting"] = weighting_name(report.weighting);
  j["value"] = report.value;
  j["ties"] = report.tie_count;
  j["tau"] = report.tau;
  j["numerator_halves"] = report.numerator_halves;
  j["term_count"] = report.term_count;
  j["tie_tolerance"] = report.tie_tolerance;
  return j;
}

}  // namespace causalsort
