// Plaintext Branch-and-Bound for binary IPs of subset-formulation shape:
// branching fixes a variable to 1 or 0 by substitution, children carry the
// parent's rational LP value as their bound, the queue is FIFO with the
// x_i = 1 child first.

#pragma once

#include <cstddef>
#include <vector>

#include "kepmpc/plain/simplex.hpp"
#include "kepmpc/plain/tree_trace.hpp"

namespace kepmpc {

enum class BranchPolicy {
  // Branch on every explored node, integral or not; integral nodes get two
  // children that are pruned. This is what the secure protocol does.
  kAlways,
  // Textbook: only fractional nodes are branched.
  kFractionalOnly,
};

// Per-node detail the plaintext run can afford to keep.
struct PlainNodeDetail {
  BigInt bound_num;
  BigInt bound_den = 1;
  // Set only for explored nodes.
  bool solved = false;
  std::vector<BigInt> x;  // complete solution X = X' + d Q over structural variables
  BigInt z;
  BigInt d = 1;
  bool integral = false;
  // 1-based index of the branching variable, 0 if none.
  std::size_t branch_var = 0;
};

struct PlainBBResult {
  std::vector<std::int64_t> x_star;  // over structural variables
  BigInt z_star;
  TreeTrace trace;
  std::vector<PlainNodeDetail> details;
};

// `structural` is the number of leading columns that are branchable
// variables; the remaining variable columns are slacks. Incumbent starts at
// x = 0, z = 0.
PlainBBResult plain_branch_and_bound(const PlainTableau& root, std::size_t structural, const BigInt& initial_bound,
                                     BranchPolicy policy = BranchPolicy::kAlways);

// Substitutes x_var = value: the bound column absorbs value * column, then
// the column is zeroed (objective row included).
PlainTableau fix_variable(const PlainTableau& t, std::size_t var, int value);

}  // namespace kepmpc
