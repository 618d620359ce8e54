#pragma once

#include "causalsort/anm.hpp"
#include "causalsort/dag.hpp"

namespace causalsort {

struct GraphDistances {
  int sid = 0;
  int shd = 0;
};

// Structural Hamming distance: number of unordered node pairs whose edge
// status differs; a reversed edge counts as one error.
int shd(const Dag& g_true, const Dag& g_est);

// Structural intervention distance: ordered pairs (i, j) whose
// interventional distribution is miscomputed by adjusting for the parents
// of i in g_est. A pair is correct iff either j is a claimed parent of i
// and truly not a descendant of i, or pa_est(i) is a valid adjustment set
// for (i, j) in g_true (no forbidden nodes, all proper non-causal paths
// blocked).
int sid(const Dag& g_true, const Dag& g_est);

GraphDistances graph_distances(const Dag& g_true, const Dag& g_est);

// Analytic cross-check of sid for linear ANMs with generic weights: counts
// ordered pairs where the parent-adjusted regression coefficient of X_i on
// X_j (computed from the population covariance) differs from the true total
// effect (the path-weight sum) by more than tol.
int linear_sid_oracle(const AnmInstance& truth, const Dag& g_est, double tol);

}  // namespace causalsort
