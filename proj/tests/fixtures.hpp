// Shared instances for the test binaries.

#pragma once

#include <random>

#include "kepmpc/plain/kep_oracle.hpp"
#include "kepmpc/plain/tableau.hpp"

namespace kepmpc::fixtures {

// max 3x1 + 2x2 + 2x3 s.t. x1 + 2x2 + 3x3 <= 3, 3x1 + x2 + 2x3 <= 3, 2x1 + 3x2 + x3 <= 3.
inline PlainTableau example_ip_tableau() {
  return standard_tableau({3, 2, 2}, {{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}, {3, 3, 3});
}

// Four pairs with the 2-cycle (2,3) and the 3-cycle (1,2,4).
inline Digraph example_graph() { return Digraph::from_edges(4, {{2, 3}, {3, 2}, {1, 2}, {2, 4}, {4, 1}}); }

inline Digraph random_graph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(density);
  Digraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && edge(rng)) g.set(u, v);
    }
  }
  return g;
}

}  // namespace kepmpc::fixtures
