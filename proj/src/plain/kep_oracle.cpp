#include "kepmpc/plain/kep_oracle.hpp"

#include <functional>
#include <stdexcept>

namespace kepmpc {

Digraph Digraph::from_edges(int vertices, const std::vector<std::pair<int, int>>& edges_1based) {
  Digraph g(vertices);
  for (auto [u, v] : edges_1based) {
    if (u < 1 || v < 1 || u > vertices || v > vertices || u == v) throw std::invalid_argument("bad edge");
    g.set(u - 1, v - 1);
  }
  return g;
}

std::size_t Digraph::edge_count() const {
  std::size_t c = 0;
  for (auto e : adj) c += e;
  return c;
}

namespace {

// All cycles of length 2..max_len, each listed once starting at its
// smallest vertex; grouped by that vertex.
std::vector<std::vector<std::vector<int>>> cycles_by_min(const Digraph& g, int max_len) {
  std::vector<std::vector<std::vector<int>>> out(g.n);
  std::vector<int> path;
  std::vector<bool> used(g.n, false);
  std::function<void(int)> extend = [&](int start) {
    const int last = path.back();
    if (path.size() >= 2 && g.has(last, start)) out[start].push_back(path);
    if (static_cast<int>(path.size()) == max_len) return;
    for (int w = start + 1; w < g.n; ++w) {
      if (used[w] || !g.has(last, w)) continue;
      used[w] = true;
      path.push_back(w);
      extend(start);
      path.pop_back();
      used[w] = false;
    }
  };
  for (int s = 0; s < g.n; ++s) {
    path = {s};
    used.assign(g.n, false);
    used[s] = true;
    extend(s);
  }
  return out;
}

}  // namespace

KepOracleResult brute_force_kep(const Digraph& g, int max_cycle) {
  KepOracleResult best;
  if (g.n == 0 || max_cycle < 2) return best;
  const auto cycles = cycles_by_min(g, max_cycle);
  std::vector<bool> taken(g.n, false);
  std::vector<const std::vector<int>*> chosen;
  int covered = 0;

  // Vertices are decided in increasing order: a cycle can only cover v if v
  // is its smallest vertex, since smaller ones are already decided.
  std::function<void(int)> search = [&](int v) {
    while (v < g.n && taken[v]) ++v;
    // Upper bound: every remaining vertex gets covered.
    int remaining = 0;
    for (int w = v; w < g.n; ++w) remaining += taken[w] ? 0 : 1;
    if (covered + remaining <= best.transplants) return;
    if (v >= g.n) {
      best.transplants = covered;
      best.cycles.clear();
      for (const auto* c : chosen) {
        std::vector<int> one;
        for (int x : *c) one.push_back(x + 1);
        best.cycles.push_back(std::move(one));
      }
      return;
    }
    for (const auto& c : cycles[v]) {
      bool free = true;
      for (int x : c) free = free && !taken[x];
      if (!free) continue;
      for (int x : c) taken[x] = true;
      covered += static_cast<int>(c.size());
      chosen.push_back(&c);
      search(v + 1);
      chosen.pop_back();
      covered -= static_cast<int>(c.size());
      for (int x : c) taken[x] = false;
    }
    taken[v] = true;  // v stays unmatched
    search(v + 1);
    taken[v] = false;
  };
  search(0);
  return best;
}

bool verify_solution(const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& r, const Digraph& g,
                     int max_cycle, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto n = static_cast<std::int64_t>(g.n);
  if (static_cast<std::int64_t>(d.size()) != n || static_cast<std::int64_t>(r.size()) != n) {
    return fail("output length differs from pair count");
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (d[i] < 0 || d[i] > n || r[i] < 0 || r[i] > n) return fail("index out of range at pair " + std::to_string(i + 1));
    if ((d[i] == 0) != (r[i] == 0)) return fail("pair " + std::to_string(i + 1) + " only half matched");
    if (r[i] == 0) continue;
    if (r[i] == i + 1) return fail("pair " + std::to_string(i + 1) + " donates to itself");
    if (!g.has(static_cast<int>(i), static_cast<int>(r[i] - 1))) {
      return fail("edge " + std::to_string(i + 1) + "->" + std::to_string(r[i]) + " is not compatible");
    }
    if (d[r[i] - 1] != i + 1) return fail("donor and recipient indices disagree at pair " + std::to_string(i + 1));
  }
  // d(r(i)) = i makes r injective on matched pairs, so its orbits are disjoint cycles.
  for (std::int64_t i = 0; i < n; ++i) {
    if (r[i] == 0) continue;
    int len = 0;
    std::int64_t v = i;
    do {
      v = r[v] - 1;
      ++len;
    } while (v != i && len <= n);
    if (v != i) return fail("pair " + std::to_string(i + 1) + " is not on a cycle");
    if (len > max_cycle) return fail("cycle through pair " + std::to_string(i + 1) + " is too long");
  }
  return true;
}

int transplant_count(const std::vector<std::int64_t>& r) {
  int c = 0;
  for (auto v : r) c += v != 0 ? 1 : 0;
  return c;
}

}  // namespace kepmpc
