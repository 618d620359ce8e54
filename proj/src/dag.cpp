#include "causalsort/dag.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace causalsort {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool& clamped) {
  if (a > UINT64_MAX - b) {
    clamped = true;
    return UINT64_MAX;
  }
  return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool& clamped) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) {
    clamped = true;
    return UINT64_MAX;
  }
  return a * b;
}

}  // namespace

Dag::Dag(int d) : d_(d) {
  if (d <= 0) throw std::invalid_argument("Dag: node count must be positive");
  adj_.assign(static_cast<size_t>(d) * d, 0);
}

Dag::Dag(int d, std::span<const std::pair<int, int>> edges) : Dag(d) {
  for (const auto& [s, t] : edges) {
    check_node(s, "edge source");
    check_node(t, "edge target");
    if (s == t) throw std::invalid_argument("Dag: self-loop " + std::to_string(s));
    if (adj_[idx(s, t)]) {
      throw std::invalid_argument("Dag: duplicate edge " + std::to_string(s) + "->" +
                                  std::to_string(t));
    }
    adj_[idx(s, t)] = 1;
    ++edge_count_;
  }
  check_acyclic();
}

Dag Dag::chain(int d) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < d; ++v) e.emplace_back(v, v + 1);
  return Dag(d, e);
}

void Dag::check_node(int v, const char* what) const {
  if (v < 0 || v >= d_) {
    throw std::invalid_argument(std::string("Dag: ") + what + " " + std::to_string(v) +
                                " out of range [0," + std::to_string(d_) + ")");
  }
}

void Dag::check_acyclic() const {
  // Kahn's algorithm; failing to place every node means a cycle.
  std::vector<int> indeg(d_, 0);
  for (int s = 0; s < d_; ++s)
    for (int t = 0; t < d_; ++t)
      if (adj_[idx(s, t)]) ++indeg[t];
  std::vector<int> stack;
  for (int v = 0; v < d_; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int placed = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++placed;
    for (int t = 0; t < d_; ++t) {
      if (adj_[idx(v, t)] && --indeg[t] == 0) stack.push_back(t);
    }
  }
  if (placed != d_) throw std::invalid_argument("Dag: edge set contains a cycle");
}

std::vector<std::pair<int, int>> Dag::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int s = 0; s < d_; ++s)
    for (int t = 0; t < d_; ++t)
      if (adj_[idx(s, t)]) out.emplace_back(s, t);
  return out;
}

std::vector<int> Dag::parents(int t) const {
  check_node(t, "node");
  std::vector<int> out;
  for (int s = 0; s < d_; ++s)
    if (adj_[idx(s, t)]) out.push_back(s);
  return out;
}

std::vector<int> Dag::children(int s) const {
  check_node(s, "node");
  std::vector<int> out;
  for (int t = 0; t < d_; ++t)
    if (adj_[idx(s, t)]) out.push_back(t);
  return out;
}

std::vector<int> Dag::topological_order() const {
  std::vector<int> indeg(d_, 0);
  for (int s = 0; s < d_; ++s)
    for (int t = 0; t < d_; ++t)
      if (adj_[idx(s, t)]) ++indeg[t];
  std::vector<bool> placed(d_, false);
  std::vector<int> order;
  order.reserve(d_);
  for (int step = 0; step < d_; ++step) {
    int pick = -1;
    for (int v = 0; v < d_; ++v) {
      if (!placed[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    }
    // pick >= 0 is guaranteed by the acyclicity invariant
    placed[pick] = true;
    order.push_back(pick);
    for (int t = 0; t < d_; ++t)
      if (adj_[idx(pick, t)]) --indeg[t];
  }
  return order;
}

std::vector<int> Dag::descendants(int s) const {
  check_node(s, "node");
  std::vector<bool> seen(d_, false);
  std::vector<int> stack{s};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int t = 0; t < d_; ++t) {
      if (adj_[idx(v, t)] && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < d_; ++v)
    if (seen[v] && v != s) out.push_back(v);
  return out;
}

std::vector<int> Dag::ancestors(int t) const {
  check_node(t, "node");
  std::vector<bool> seen(d_, false);
  std::vector<int> stack{t};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int s = 0; s < d_; ++s) {
      if (adj_[idx(s, v)] && !seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < d_; ++v)
    if (seen[v] && v != t) out.push_back(v);
  return out;
}

Dag Dag::without_edges(std::span<const std::pair<int, int>> removed) const {
  Dag g(d_);
  g.adj_ = adj_;
  g.edge_count_ = edge_count_;
  for (const auto& [s, t] : removed) {
    check_node(s, "edge source");
    check_node(t, "edge target");
    if (g.adj_[idx(s, t)]) {
      g.adj_[idx(s, t)] = 0;
      --g.edge_count_;
    }
  }
  return g;
}

Dag sample_er_dag(int d, int m, Rng& rng) {
  if (d <= 0) throw std::invalid_argument("sample_er_dag: d must be positive");
  const long long max_edges = static_cast<long long>(d) * (d - 1) / 2;
  if (m < 0 || m > max_edges) {
    throw std::invalid_argument("sample_er_dag: edge count " + std::to_string(m) +
                                " outside [0," + std::to_string(max_edges) + "]");
  }
  // Upper-triangle slots in position space, then a shuffled node order.
  std::vector<std::pair<int, int>> slots;
  slots.reserve(static_cast<size_t>(max_edges));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) slots.emplace_back(a, b);
  const std::vector<int> chosen =
      rng.sample_without_replacement(static_cast<int>(slots.size()), m);
  const std::vector<int> perm = rng.permutation(d);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (const int k : chosen) {
    edges.emplace_back(perm[slots[k].first], perm[slots[k].second]);
  }
  return Dag(d, edges);
}

Dag sample_sf_dag(int d, int attach, Rng& rng) {
  if (attach < 1) throw std::invalid_argument("sample_sf_dag: attach must be >= 1");
  if (d <= attach) throw std::invalid_argument("sample_sf_dag: need d > attach");
  // Preferential attachment in position space: node t >= attach picks
  // `attach` distinct earlier nodes with probability proportional to
  // degree+1 (the +1 lets degree-zero seed nodes be picked).
  std::vector<int> degree(d, 0);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(attach) * (d - attach));
  std::vector<char> taken(d, 0);
  for (int t = attach; t < d; ++t) {
    std::fill(taken.begin(), taken.begin() + t, 0);
    for (int pick = 0; pick < attach; ++pick) {
      long long total = 0;
      for (int v = 0; v < t; ++v)
        if (!taken[v]) total += degree[v] + 1;
      double u = rng.uniform01() * static_cast<double>(total);
      int sel = -1;
      for (int v = 0; v < t; ++v) {
        if (taken[v]) continue;
        u -= degree[v] + 1;
        if (u < 0) {
          sel = v;
          break;
        }
      }
      if (sel < 0) {  // guard against rounding off the top
        for (int v = t - 1; v >= 0; --v)
          if (!taken[v]) {
            sel = v;
            break;
          }
      }
      taken[sel] = 1;
      edges.emplace_back(sel, t);  // earlier position -> later position
    }
    for (int pick = 0, k = static_cast<int>(edges.size()) - attach; pick < attach;
         ++pick, ++k) {
      ++degree[edges[k].first];
      ++degree[edges[k].second];
    }
  }
  const std::vector<int> perm = rng.permutation(d);
  for (auto& [s, t] : edges) {
    s = perm[s];
    t = perm[t];
  }
  return Dag(d, edges);
}

PathLengthIndex path_length_index(const Dag& g) {
  const int d = g.node_count();
  PathLengthIndex index;
  index.d = d;
  index.by_length.resize(d);

  std::vector<std::uint64_t> adj(static_cast<size_t>(d) * d, 0);
  for (const auto& [s, t] : g.edges()) adj[static_cast<size_t>(s) * d + t] = 1;

  std::vector<std::uint64_t> power = adj;
  bool clamped = false;
  for (int len = 1; len <= d; ++len) {
    auto& entries = index.by_length[len - 1];
    bool any = false;
    for (int s = 0; s < d; ++s) {
      for (int t = 0; t < d; ++t) {
        const std::uint64_t c = power[static_cast<size_t>(s) * d + t];
        if (c > 0) {
          entries.push_back({s, t, c});
          any = true;
        }
      }
    }
    if (!any || len == d) break;
    // power <- power * adj, saturating
    std::vector<std::uint64_t> next(static_cast<size_t>(d) * d, 0);
    for (int s = 0; s < d; ++s) {
      for (int k = 0; k < d; ++k) {
        const std::uint64_t p = power[static_cast<size_t>(s) * d + k];
        if (p == 0) continue;
        for (int t = 0; t < d; ++t) {
          const std::uint64_t a = adj[static_cast<size_t>(k) * d + t];
          if (a == 0) continue;
          auto& cell = next[static_cast<size_t>(s) * d + t];
          cell = sat_add(cell, sat_mul(p, a, clamped), clamped);
        }
      }
    }
    power.swap(next);
  }
  index.saturated = clamped;
  return index;
}

std::vector<std::pair<int, int>> PathLengthIndex::connected_pairs() const {
  std::vector<std::uint8_t> seen(static_cast<size_t>(d) * d, 0);
  std::vector<std::pair<int, int>> out;
  for (const auto& entries : by_length) {
    for (const auto& e : entries) {
      auto& flag = seen[static_cast<size_t>(e.src) * d + e.dst];
      if (!flag) {
        flag = 1;
        out.emplace_back(e.src, e.dst);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool d_separated(const Dag& g, int i, int j, std::span<const int> given) {
  const int d = g.node_count();
  if (i < 0 || i >= d || j < 0 || j >= d) {
    throw std::invalid_argument("d_separated: node out of range");
  }
  if (i == j) throw std::invalid_argument("d_separated: i and j must differ");
  std::vector<bool> in_z(d, false);
  for (const int z : given) {
    if (z < 0 || z >= d) throw std::invalid_argument("d_separated: Z node out of range");
    in_z[z] = true;
  }
  if (in_z[i] || in_z[j]) {
    throw std::invalid_argument("d_separated: endpoints must not be in Z");
  }

  // Nodes in Z or with a descendant in Z (collider openers).
  std::vector<bool> anc_z(d, false);
  {
    std::vector<int> stack;
    for (int v = 0; v < d; ++v) {
      if (in_z[v]) {
        anc_z[v] = true;
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const int p : g.parents(v)) {
        if (!anc_z[p]) {
          anc_z[p] = true;
          stack.push_back(p);
        }
      }
    }
  }

  // Reachability over (node, arrival direction) states. Arrival "up" means
  // the trail reached the node from one of its children, "down" from a
  // parent. Start pretends i was reached from a child so every move is open.
  enum : int { kUp = 0, kDown = 1 };
  std::vector<std::uint8_t> visited(static_cast<size_t>(d) * 2, 0);
  std::vector<std::pair<int, int>> stack{{i, kUp}};
  while (!stack.empty()) {
    const auto [v, dir] = stack.back();
    stack.pop_back();
    if (v == j) return false;  // active trail found
    auto& flag = visited[static_cast<size_t>(v) * 2 + dir];
    if (flag) continue;
    flag = 1;
    if (dir == kUp) {
      if (!in_z[v]) {
        for (const int p : g.parents(v)) stack.emplace_back(p, kUp);
        for (const int c : g.children(v)) stack.emplace_back(c, kDown);
      }
    } else {
      if (!in_z[v]) {
        for (const int c : g.children(v)) stack.emplace_back(c, kDown);
      }
      if (anc_z[v]) {  // collider at v is open
        for (const int p : g.parents(v)) stack.emplace_back(p, kUp);
      }
    }
  }
  return true;
}

}  // namespace causalsort
