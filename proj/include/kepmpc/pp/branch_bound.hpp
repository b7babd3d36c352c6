// Secret-shared Branch-and-Bound over pp_simplex. Control flow depends only
// on opened prune bits and Simplex status values, so the public trace is the
// tree structure and the iteration counts.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>

#include "kepmpc/plain/tree_trace.hpp"
#include "kepmpc/pp/simplex.hpp"

namespace kepmpc::pp {

struct BBParams {
  unsigned entry_bits = 32;
  // Leading variable columns that may be branched on; the rest are slacks.
  std::size_t structural = 0;
  // Public K with z/d <= K for every node (the pair count for the KEP).
  std::int64_t value_cap = 0;
  std::size_t iteration_cap = 0;
  // Test hook: called after each explored node with X (complete, d-scaled),
  // z, d and the branching indicator F.
  std::function<void(Peer&, const Shares&, const FieldElement&, const FieldElement&, const Shares&)> on_node;
};

struct Incumbent {
  Shares x;
  FieldElement z;
};

struct BBResult {
  Incumbent best;
  TreeTrace trace;
};

// Bits of a value bounded by value_cap.
unsigned cap_bits(std::int64_t value_cap);

// Opens t = [z_p > z* d_p] under the prune-bit label.
bool prune_check(Peer& peer, const FieldElement& z_parent, const FieldElement& d_parent, const FieldElement& z_star,
                 const BBParams& params);

struct UpdateResult {
  Incumbent incumbent;
  FieldElement u;  // floor(z / d)
  Shares f;        // unit indicator of the first fractional variable, or zero
};

// x: complete d-scaled solution over the structural variables.
UpdateResult ip_update(Peer& peer, const Shares& x, const FieldElement& z, const FieldElement& d,
                       const FieldElement& d_inv, const Incumbent& incumbent, const BBParams& params);

// Children with the variable marked by f substituted by 1 (first) and 0.
std::pair<ShareMatrix, ShareMatrix> ip_branch(Peer& peer, const ShareMatrix& t, const Shares& f);

// Starts from the incumbent x = 0, z = 0 and the root bound bound_num / 1.
BBResult pp_branch_and_bound(Peer& peer, const ShareMatrix& t, const FieldElement& bound_num,
                             const BBParams& params);

}  // namespace kepmpc::pp
