// Exhaustive cycle packing and solution checking for compatibility graphs.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kepmpc {

// Directed graph on vertices 0..n-1; edge (u, v) means donor u can give to
// patient v.
struct Digraph {
  int n = 0;
  std::vector<std::uint8_t> adj;

  Digraph() = default;
  explicit Digraph(int vertices) : n(vertices), adj(static_cast<std::size_t>(vertices) * vertices, 0) {}
  // 1-based edge list, as pairs are numbered in the protocol.
  static Digraph from_edges(int vertices, const std::vector<std::pair<int, int>>& edges_1based);

  bool has(int u, int v) const { return adj[static_cast<std::size_t>(u) * n + v] != 0; }
  void set(int u, int v, bool on = true) { adj[static_cast<std::size_t>(u) * n + v] = on ? 1 : 0; }
  std::size_t edge_count() const;

  bool operator==(const Digraph&) const = default;
};

struct KepOracleResult {
  int transplants = 0;
  // Each cycle as 1-based vertices in donation order.
  std::vector<std::vector<int>> cycles;
};

// Maximum number of vertices covered by vertex-disjoint cycles of length
// 2..max_cycle. Exponential; meant for small graphs.
KepOracleResult brute_force_kep(const Digraph& g, int max_cycle);

// d and r are 1-based partner indices (0 = none): r[i] receives from pair
// i's donor, d[i] donates to pair i's patient. Accepts iff they form
// vertex-disjoint cycles of length 2..max_cycle over existing edges.
bool verify_solution(const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& r, const Digraph& g,
                     int max_cycle, std::string* why = nullptr);

int transplant_count(const std::vector<std::int64_t>& r);

}  // namespace kepmpc
