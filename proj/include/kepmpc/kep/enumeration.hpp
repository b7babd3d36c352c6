// Public enumeration of candidate subsets and their cycle orientations, and
// the plaintext version of the tableau setup built on it.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kepmpc/plain/branch_bound.hpp"
#include "kepmpc/plain/kep_oracle.hpp"
#include "kepmpc/plain/tableau.hpp"

namespace kepmpc {

struct SubsetEnumeration {
  int pairs = 0;
  int max_cycle = 0;
  // Vertex sets (0-based, ascending), by size then lexicographically.
  std::vector<std::vector<int>> subsets;
  // cycles[i]: orientations of subsets[i], each starting at its smallest
  // vertex, in lexicographic order; (|S_i| - 1)! of them.
  std::vector<std::vector<std::vector<int>>> cycles;

  std::size_t size() const { return subsets.size(); }
  std::size_t max_orientations() const;
  std::size_t total_cycles() const;
};

SubsetEnumeration enumerate_subsets(int pairs, int max_cycle);

// Column count of the setup tableau: |S| subset columns, pairs slacks, bound.
inline std::size_t tableau_cols(const SubsetEnumeration& e) { return e.size() + e.pairs + 1; }

// Orientation index chosen per subset (first existing cycle), -1 if none.
std::vector<int> plain_cycle_choice(const Digraph& g, const SubsetEnumeration& e);
PlainTableau plain_setup(const Digraph& g, const SubsetEnumeration& e);

// Public bound on the magnitude of any entry integer pivoting can produce
// from a setup tableau or any of its branched descendants.
unsigned kep_entry_bits(int pairs, int max_cycle);

struct PlainKepResult {
  int transplants = 0;
  std::vector<std::int64_t> donor;      // D, 1-based, 0 = none
  std::vector<std::int64_t> recipient;  // R
  PlainBBResult bb;
};

// Subset x* -> D, R via the orientation choice.
void plain_derive(const std::vector<std::int64_t>& x_star, const std::vector<int>& choice, const SubsetEnumeration& e,
                  std::vector<std::int64_t>& donor, std::vector<std::int64_t>& recipient);

PlainKepResult plain_solve_kep(const Digraph& g, int max_cycle, BranchPolicy policy = BranchPolicy::kAlways);

}  // namespace kepmpc
