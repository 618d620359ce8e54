#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "causalsort/rng.hpp"

namespace causalsort {

// Directed acyclic graph over nodes 0..d-1, dense binary adjacency.
// Acyclicity is validated at construction; instances are immutable.
class Dag {
 public:
  explicit Dag(int d);  // edgeless
  Dag(int d, std::span<const std::pair<int, int>> edges);

  static Dag chain(int d);  // 0 -> 1 -> ... -> d-1

  int node_count() const { return d_; }
  int edge_count() const { return edge_count_; }
  bool has_edge(int s, int t) const { return adj_[idx(s, t)] != 0; }

  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> parents(int t) const;
  std::vector<int> children(int s) const;

  // Permutation pi with pi[s] < pi[t] for every edge s->t, returned as the
  // node sequence in order (position -> node). Deterministic: smallest
  // eligible node first.
  std::vector<int> topological_order() const;

  // Nodes reachable from s by a directed path, excluding s. Sorted.
  std::vector<int> descendants(int s) const;
  std::vector<int> ancestors(int t) const;

  // Copy with the given edges removed (absent edges are ignored).
  Dag without_edges(std::span<const std::pair<int, int>> removed) const;

 private:
  int idx(int s, int t) const { return s * d_ + t; }
  void check_node(int v, const char* what) const;
  void check_acyclic() const;

  int d_ = 0;
  int edge_count_ = 0;
  std::vector<std::uint8_t> adj_;
};

// Erdős–Rényi style DAG: exactly m edges chosen uniformly among the
// strictly-upper-triangular slots of a random node permutation.
Dag sample_er_dag(int d, int m, Rng& rng);

// Scale-free DAG: Barabási–Albert preferential attachment with `attach`
// edges per incoming node, oriented by the same upper-triangle-plus-shuffle
// scheme as ER. Yields attach*(d-attach) edges.
Dag sample_sf_dag(int d, int attach, Rng& rng);

struct PathLengthEntry {
  int src;
  int dst;
  std::uint64_t count;  // number of directed paths of this length
};

// Directed-path census by length: for each length i in 1..d, the ordered
// pairs with at least one directed path of length i together with the exact
// path count (the (src,dst) entry of the i-th adjacency power). Counts are
// exact unless they exceed 2^64-1, in which case they clamp to 2^64-1 and
// `saturated` is set. Lengths beyond the longest path have empty entries.
struct PathLengthIndex {
  int d = 0;
  bool saturated = false;
  std::vector<std::vector<PathLengthEntry>> by_length;  // index i-1 = length i

  // Ordered pairs connected by at least one directed path of any length.
  std::vector<std::pair<int, int>> connected_pairs() const;
};

PathLengthIndex path_length_index(const Dag& g);

// Standard d-separation of i and j given the conditioning set `given`.
bool d_separated(const Dag& g, int i, int j, std::span<const int> given);

}  // namespace causalsort
