#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "causalsort/dag.hpp"
#include "oracles.hpp"

using namespace causalsort;

TEST_CASE("construction validates") {
  CHECK_THROWS_AS(Dag(0), std::invalid_argument);
  std::vector<std::pair<int, int>> self{{1, 1}};
  CHECK_THROWS_AS(Dag(3, self), std::invalid_argument);
  std::vector<std::pair<int, int>> dup{{0, 1}, {0, 1}};
  CHECK_THROWS_AS(Dag(3, dup), std::invalid_argument);
  std::vector<std::pair<int, int>> cycle{{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(Dag(3, cycle), std::invalid_argument);
  std::vector<std::pair<int, int>> oob{{0, 3}};
  CHECK_THROWS_AS(Dag(3, oob), std::invalid_argument);
}

TEST_CASE("er sampling: exact edge count, zero and complete cases") {
  Rng rng(7);
  const Dag empty = sample_er_dag(5, 0, rng);
  CHECK(empty.edge_count() == 0);

  const Dag complete = sample_er_dag(3, 3, rng);
  CHECK(complete.edge_count() == 3);
  // all upper-triangle slots filled: every pair connected one way
  for (int s = 0; s < 3; ++s)
    for (int t = s + 1; t < 3; ++t)
      CHECK((complete.has_edge(s, t) || complete.has_edge(t, s)));

  const Dag g = sample_er_dag(20, 40, rng);
  CHECK(g.edge_count() == 40);

  CHECK_THROWS_AS(sample_er_dag(5, 11, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_er_dag(5, -1, rng), std::invalid_argument);
}

TEST_CASE("er sampling: acyclic and exact count across seeds") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const int d = 4 + static_cast<int>(seed % 9);
    const int max_edges = d * (d - 1) / 2;
    const int m = rng.uniform_int(max_edges + 1);
    const Dag g = sample_er_dag(d, m, rng);
    CHECK(g.edge_count() == m);
    CHECK(oracles::is_acyclic(d, g.edges()));
  }
}

TEST_CASE("sf sampling") {
  Rng rng(11);
  const Dag tiny = sample_sf_dag(2, 1, rng);
  CHECK(tiny.edge_count() == 1);

  const Dag g = sample_sf_dag(20, 2, rng);
  CHECK(g.edge_count() == 2 * (20 - 2));
  CHECK(oracles::is_acyclic(20, g.edges()));

  const Dag big = sample_sf_dag(50, 2, rng);
  CHECK(big.edge_count() == 2 * (50 - 2));
  CHECK(oracles::is_acyclic(50, big.edges()));

  CHECK_THROWS_AS(sample_sf_dag(5, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_sf_dag(3, 3, rng), std::invalid_argument);
}

TEST_CASE("sf sampling: hubs emerge") {
  // preferential attachment should concentrate degree on a few nodes
  Rng rng(3);
  const Dag g = sample_sf_dag(50, 2, rng);
  std::vector<int> degree(50, 0);
  for (const auto& [s, t] : g.edges()) {
    ++degree[s];
    ++degree[t];
  }
  std::sort(degree.begin(), degree.end());
  CHECK(degree.back() >= 2 * degree[25]);
}

TEST_CASE("topological order") {
  const Dag chain = Dag::chain(3);
  const std::vector<int> expected{0, 1, 2};
  CHECK(chain.topological_order() == expected);

  const Dag edgeless(3);
  CHECK(edgeless.topological_order().size() == 3);

  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    const int d = 3 + static_cast<int>(seed % 6);
    const Dag g = sample_er_dag(d, rng.uniform_int(d * (d - 1) / 2 + 1), rng);
    const std::vector<int> order = g.topological_order();
    std::vector<int> position(d);
    for (int pos = 0; pos < d; ++pos) position[order[pos]] = pos;
    for (const auto& [s, t] : g.edges()) CHECK(position[s] < position[t]);
  }
}

TEST_CASE("path length index: chain and edgeless") {
  const PathLengthIndex idx = path_length_index(Dag::chain(3));
  REQUIRE(idx.by_length.size() == 3);
  CHECK(idx.by_length[0].size() == 2);
  CHECK(idx.by_length[1].size() == 1);
  CHECK(idx.by_length[1][0].src == 0);
  CHECK(idx.by_length[1][0].dst == 2);
  CHECK(idx.by_length[1][0].count == 1);
  CHECK(idx.by_length[2].empty());
  CHECK_FALSE(idx.saturated);

  const PathLengthIndex none = path_length_index(Dag(4));
  for (const auto& entries : none.by_length) CHECK(entries.empty());
}

TEST_CASE("path length index: complete 4-node graph") {
  // complete DAG on 4 nodes: 6 edges, 3 pairs with length-2 paths (4 paths),
  // 1 pair with a length-3 path
  const std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {1, 2},
                                               {0, 3}, {1, 3}, {2, 3}};
  const PathLengthIndex idx = path_length_index(Dag(4, edges));
  CHECK(idx.by_length[0].size() == 6);
  CHECK(idx.by_length[1].size() == 3);
  std::uint64_t length2_paths = 0;
  for (const auto& e : idx.by_length[1]) length2_paths += e.count;
  CHECK(length2_paths == 4);
  REQUIRE(idx.by_length[2].size() == 1);
  CHECK(idx.by_length[2][0].src == 0);
  CHECK(idx.by_length[2][0].dst == 3);
  CHECK(idx.by_length[2][0].count == 1);
}

TEST_CASE("path length index matches brute-force enumeration (d <= 6)") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int d = 2 + static_cast<int>(seed % 5);
    const Dag g = sample_er_dag(d, rng.uniform_int(d * (d - 1) / 2 + 1), rng);
    const oracles::PathCounts expected = oracles::enumerate_paths(g);
    const PathLengthIndex idx = path_length_index(g);
    std::uint64_t seen_entries = 0;
    for (int len = 1; len <= d; ++len) {
      for (const auto& e : idx.by_length[len - 1]) {
        auto it = expected.find({e.src, e.dst, len});
        REQUIRE(it != expected.end());
        CHECK(it->second == e.count);
        ++seen_entries;
      }
    }
    CHECK(seen_entries == expected.size());
  }
}

TEST_CASE("descendants") {
  const Dag chain = Dag::chain(3);
  CHECK(chain.descendants(0) == std::vector<int>{1, 2});
  CHECK(Dag(4).descendants(2).empty());

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const Dag g = sample_er_dag(7, rng.uniform_int(22), rng);
    for (int s = 0; s < 7; ++s) {
      const auto expected = oracles::reachable_from(g, s);
      const auto got = g.descendants(s);
      CHECK(std::set<int>(got.begin(), got.end()) == expected);
    }
  }
}

TEST_CASE("d-separation: chain and collider") {
  const Dag chain = Dag::chain(3);
  const std::vector<int> z1{1};
  CHECK(d_separated(chain, 0, 2, z1));
  CHECK_FALSE(d_separated(chain, 0, 2, {}));

  const std::vector<std::pair<int, int>> coll{{0, 2}, {1, 2}};
  const Dag collider(3, coll);
  CHECK(d_separated(collider, 0, 1, {}));
  const std::vector<int> z2{2};
  CHECK_FALSE(d_separated(collider, 0, 1, z2));
}

TEST_CASE("d-separation: collider opened by a descendant") {
  // 0 -> 2 <- 1, 2 -> 3: conditioning on 3 opens the collider
  const std::vector<std::pair<int, int>> edges{{0, 2}, {1, 2}, {2, 3}};
  const Dag g(4, edges);
  const std::vector<int> z{3};
  CHECK_FALSE(d_separated(g, 0, 1, z));
}

TEST_CASE("d-separation preconditions") {
  const Dag g = Dag::chain(3);
  const std::vector<int> z0{0};
  CHECK_THROWS_AS(d_separated(g, 0, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(d_separated(g, 0, 2, z0), std::invalid_argument);
}

TEST_CASE("d-separation agrees with exhaustive path walk (d <= 6)") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    const int d = 4 + static_cast<int>(seed % 3);
    const Dag g = sample_er_dag(d, rng.uniform_int(d * (d - 1) / 2 + 1), rng);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        std::vector<int> rest;
        for (int v = 0; v < d; ++v)
          if (v != i && v != j) rest.push_back(v);
        for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
          std::vector<int> z;
          for (size_t k = 0; k < rest.size(); ++k)
            if (mask & (1u << k)) z.push_back(rest[k]);
          CHECK(d_separated(g, i, j, z) == oracles::d_separated_bruteforce(g, i, j, z));
        }
      }
    }
  }
}

TEST_CASE("without_edges removes and preserves the rest") {
  const Dag g = Dag::chain(4);
  const std::vector<std::pair<int, int>> rm{{1, 2}};
  const Dag cut = g.without_edges(rm);
  CHECK(cut.edge_count() == 2);
  CHECK_FALSE(cut.has_edge(1, 2));
  CHECK(cut.has_edge(0, 1));
  CHECK(cut.has_edge(2, 3));
}
