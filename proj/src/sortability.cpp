#include "causalsort/sortability.hpp"

#include <cmath>
#include <stdexcept>

#include "causalsort/errors.hpp"
#include "causalsort/regression.hpp"

namespace causalsort {

std::string weighting_name(Weighting w) {
  switch (w) {
    case Weighting::kUniqueLength: return "unique_length";
    case Weighting::kPathExistence: return "path_existence";
    case Weighting::kPathCount: return "path_count";
  }
  return "?";
}

Weighting weighting_from_name(const std::string& name) {
  if (name == "unique_length" || name == "ul") return Weighting::kUniqueLength;
  if (name == "path_existence" || name == "pe") return Weighting::kPathExistence;
  if (name == "path_count" || name == "pc") return Weighting::kPathCount;
  throw std::invalid_argument("unknown sortability weighting '" + name + "'");
}

namespace {

// 2 for a < b, 1 for a tie, 0 for a > b (half-units).
int incr_halves(double a, double b, double tie_tol, bool& tied) {
  if (std::abs(a - b) <= tie_tol) {
    tied = true;
    return 1;
  }
  tied = false;
  return a < b ? 2 : 0;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) {
    throw std::invalid_argument("sortability: path-count accumulator overflow");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) {
    throw std::invalid_argument("sortability: path-count accumulator overflow");
  }
  return a * b;
}

}  // namespace

SortabilityReport sortability(std::span<const double> tau, const PathLengthIndex& index,
                              Weighting weighting, double tie_tol,
                              const std::string& criterion) {
  if (static_cast<int>(tau.size()) != index.d) {
    throw std::invalid_argument("sortability: tau size does not match node count");
  }
  for (const double v : tau) {
    if (!std::isfinite(v)) throw std::invalid_argument("sortability: tau must be finite");
  }
  if (tie_tol < 0) throw std::invalid_argument("sortability: negative tie tolerance");
  if (weighting == Weighting::kPathCount && index.saturated) {
    throw std::invalid_argument(
        "sortability: path counts saturated; path-count weighting unavailable");
  }

  SortabilityReport report;
  report.criterion = criterion;
  report.weighting = weighting;
  report.tau.assign(tau.begin(), tau.end());
  report.tie_tolerance = tie_tol;

  bool tied = false;
  if (weighting == Weighting::kPathExistence) {
    for (const auto& [s, t] : index.connected_pairs()) {
      report.numerator_halves =
          checked_add(report.numerator_halves,
                      static_cast<std::uint64_t>(incr_halves(tau[s], tau[t], tie_tol, tied)));
      report.term_count = checked_add(report.term_count, 1);
      if (tied) ++report.tie_count;
    }
  } else {
    for (const auto& entries : index.by_length) {
      for (const auto& e : entries) {
        const std::uint64_t weight = weighting == Weighting::kPathCount ? e.count : 1;
        const int halves = incr_halves(tau[e.src], tau[e.dst], tie_tol, tied);
        report.numerator_halves = checked_add(
            report.numerator_halves, checked_mul(weight, static_cast<std::uint64_t>(halves)));
        report.term_count = checked_add(report.term_count, weight);
        if (tied) ++report.tie_count;
      }
    }
  }

  if (report.term_count == 0) {
    throw UndefinedSortabilityError(
        "sortability undefined: graph has no directed paths (denominator 0)");
  }
  report.value = static_cast<double>(report.numerator_halves) /
                 (2.0 * static_cast<double>(report.term_count));
  return report;
}

SortabilityReport sortability(std::span<const double> tau, const Dag& g,
                              Weighting weighting, double tie_tol,
                              const std::string& criterion) {
  return sortability(tau, path_length_index(g), weighting, tie_tol, criterion);
}

std::vector<double> var_criterion(const Dataset& data) {
  std::vector<double> tau(data.d());
  for (int t = 0; t < data.d(); ++t) tau[t] = population_variance(data.values.col(t));
  return tau;
}

std::vector<double> r2_criterion(const Dataset& data) {
  const int d = data.d();
  if (d < 2) throw std::invalid_argument("r2_criterion: need d >= 2");
  if (data.n() <= d) throw std::invalid_argument("r2_criterion: need n > d");
  std::vector<double> tau(d);
  std::vector<int> rest(d - 1);
  for (int t = 0; t < d; ++t) {
    int k = 0;
    for (int s = 0; s < d; ++s)
      if (s != t) rest[k++] = s;
    tau[t] = r_squared(data, t, rest);
  }
  return tau;
}

std::vector<double> cev_criterion(const Dataset& data, const Dag& g) {
  const int d = data.d();
  if (g.node_count() != d) {
    throw std::invalid_argument("cev_criterion: graph/data dimension mismatch");
  }
  std::vector<double> tau(d, 0.0);
  for (int t = 0; t < d; ++t) {
    const std::vector<int> pa = g.parents(t);
    if (pa.empty()) continue;  // root nodes have no cause-explained variance
    tau[t] = r_squared(data, t, pa);
  }
  return tau;
}

std::vector<double> analytic_r2_from_covariance(const Eigen::MatrixXd& cov) {
  const int d = static_cast<int>(cov.rows());
  if (cov.cols() != d) throw std::invalid_argument("analytic_r2: matrix must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("analytic_r2: covariance not positive definite");
  }
  const Eigen::MatrixXd prec = llt.solve(Eigen::MatrixXd::Identity(d, d));
  std::vector<double> tau(d);
  for (int t = 0; t < d; ++t) {
    tau[t] = 1.0 - 1.0 / (prec(t, t) * cov(t, t));
  }
  return tau;
}

}  // namespace causalsort
