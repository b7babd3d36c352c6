// Public record of a Branch-and-Bound run: the tree structure and Simplex
// iteration counts, nothing about the data.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace kepmpc {

struct TreeNode {
  int id = 0;           // 1-based, in evaluation order
  int parent = 0;       // 0 for the root
  int branch_value = -1;  // value fixed on the edge from the parent; -1 for the root
  bool pruned = false;
  std::size_t iterations = 0;

  bool operator==(const TreeNode&) const = default;
};

struct TreeTrace {
  std::vector<TreeNode> nodes;

  std::size_t pruned_count() const;
  std::size_t total_iterations() const;
  // Prune flags in node order, as opened bits (1 = explored).
  std::vector<int> prune_bits() const;

  bool operator==(const TreeTrace&) const = default;
};

nlohmann::json to_json(const TreeTrace& t);
TreeTrace trace_from_json(const nlohmann::json& j);

}  // namespace kepmpc
