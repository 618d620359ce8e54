#include "causalsort/evaluation.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace causalsort {

int shd(const Dag& g_true, const Dag& g_est) {
  const int d = g_true.node_count();
  if (g_est.node_count() != d) {
    throw std::invalid_argument("shd: node count mismatch");
  }
  int errors = 0;
  for (int s = 0; s < d; ++s) {
    for (int t = s + 1; t < d; ++t) {
      // Status of the unordered pair: none / s->t / t->s.
      const int a = g_true.has_edge(s, t) ? 1 : (g_true.has_edge(t, s) ? 2 : 0);
      const int b = g_est.has_edge(s, t) ? 1 : (g_est.has_edge(t, s) ? 2 : 0);
      if (a != b) ++errors;
    }
  }
  return errors;
}

namespace {

std::vector<std::vector<bool>> descendant_table(const Dag& g) {
  const int d = g.node_count();
  std::vector<std::vector<bool>> desc(d, std::vector<bool>(d, false));
  for (int v = 0; v < d; ++v) {
    for (const int u : g.descendants(v)) desc[v][u] = true;
  }
  return desc;
}

}  // namespace

int sid(const Dag& g_true, const Dag& g_est) {
  const int d = g_true.node_count();
  if (g_est.node_count() != d) {
    throw std::invalid_argument("sid: node count mismatch");
  }
  const auto desc = descendant_table(g_true);

  int incorrect = 0;
  for (int i = 0; i < d; ++i) {
    const std::vector<int> z = g_est.parents(i);
    std::vector<bool> in_z(d, false);
    for (const int v : z) in_z[v] = true;

    for (int j = 0; j < d; ++j) {
      if (j == i) continue;

      if (in_z[j]) {
        // Adjustment claims a null effect of i on j; correct iff truly null.
        if (desc[i][j]) ++incorrect;
        continue;
      }

      // Causal nodes: on a directed path from i to j (excluding i).
      std::vector<bool> causal(d, false);
      bool has_path = desc[i][j];
      if (has_path) {
        causal[j] = true;
        for (int c = 0; c < d; ++c) {
          if (c != i && c != j && desc[i][c] && desc[c][j]) causal[c] = true;
        }
      }

      // Forbidden: causal nodes and their descendants.
      bool z_forbidden = false;
      if (has_path) {
        std::vector<bool> forbidden(d, false);
        for (int c = 0; c < d; ++c) {
          if (!causal[c]) continue;
          forbidden[c] = true;
          for (int u = 0; u < d; ++u)
            if (desc[c][u]) forbidden[u] = true;
        }
        for (const int v : z) {
          if (forbidden[v]) {
            z_forbidden = true;
            break;
          }
        }
      }
      if (z_forbidden) {
        ++incorrect;
        continue;
      }

      // Block check in the proper back-door graph: drop the first edge of
      // every causal path (i -> c with c causal).
      std::vector<std::pair<int, int>> removed;
      if (has_path) {
        for (const int c : g_true.children(i)) {
          if (causal[c]) removed.emplace_back(i, c);
        }
      }
      const Dag backdoor_graph =
          removed.empty() ? g_true : g_true.without_edges(removed);
      if (!d_separated(backdoor_graph, i, j, z)) ++incorrect;
    }
  }
  return incorrect;
}

GraphDistances graph_distances(const Dag& g_true, const Dag& g_est) {
  return {sid(g_true, g_est), shd(g_true, g_est)};
}

int linear_sid_oracle(const AnmInstance& truth, const Dag& g_est, double tol) {
  const int d = truth.node_count();
  if (g_est.node_count() != d) {
    throw std::invalid_argument("linear_sid_oracle: node count mismatch");
  }
  const Eigen::MatrixXd cov = analytic_covariance(truth);
  // Total effects: path-weight sums, entry (i, j) of (Id - W)^{-1}.
  const Eigen::MatrixXd total =
      (Eigen::MatrixXd::Identity(d, d) - truth.weights).partialPivLu().inverse();

  int mismatches = 0;
  for (int i = 0; i < d; ++i) {
    const std::vector<int> z = g_est.parents(i);
    std::vector<bool> in_z(d, false);
    for (const int v : z) in_z[v] = true;

    // Regression of X_j on (X_i, Z): shared design block for all j.
    const int p = static_cast<int>(z.size()) + 1;
    Eigen::MatrixXd design(p, p);
    std::vector<int> cols(p);
    cols[0] = i;
    for (size_t k = 0; k < z.size(); ++k) cols[k + 1] = z[k];
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) design(a, b) = cov(cols[a], cols[b]);
    Eigen::LLT<Eigen::MatrixXd> llt(design);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("linear_sid_oracle: singular sub-covariance");
    }

    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      const double true_effect = total(i, j);
      double claimed = 0.0;  // j in Z: adjustment claims no effect
      if (!in_z[j]) {
        Eigen::VectorXd rhs(p);
        for (int a = 0; a < p; ++a) rhs(a) = cov(cols[a], j);
        claimed = llt.solve(rhs)(0);
      }
      if (std::abs(claimed - true_effect) > tol) ++mismatches;
    }
  }
  return mismatches;
}

}  // namespace causalsort
