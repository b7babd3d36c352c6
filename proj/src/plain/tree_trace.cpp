#include "kepmpc/plain/tree_trace.hpp"

namespace kepmpc {

std::size_t TreeTrace::pruned_count() const {
  std::size_t n = 0;
  for (const auto& v : nodes) n += v.pruned ? 1 : 0;
  return n;
}

std::size_t TreeTrace::total_iterations() const {
  std::size_t n = 0;
  for (const auto& v : nodes) n += v.iterations;
  return n;
}

std::vector<int> TreeTrace::prune_bits() const {
  std::vector<int> out;
  out.reserve(nodes.size());
  for (const auto& v : nodes) out.push_back(v.pruned ? 0 : 1);
  return out;
}

nlohmann::json to_json(const TreeTrace& t) {
  auto arr = nlohmann::json::array();
  for (const auto& v : t.nodes) {
    arr.push_back({{"id", v.id},
                   {"parent", v.parent},
                   {"branch_value", v.branch_value < 0 ? nlohmann::json(nullptr) : nlohmann::json(v.branch_value)},
                   {"pruned", v.pruned},
                   {"iterations", v.iterations}});
  }
  return arr;
}

TreeTrace trace_from_json(const nlohmann::json& j) {
  TreeTrace t;
  for (const auto& e : j) {
    TreeNode v;
    v.id = e.at("id").get<int>();
    v.parent = e.at("parent").get<int>();
    v.branch_value = e.at("branch_value").is_null() ? -1 : e.at("branch_value").get<int>();
    v.pruned = e.at("pruned").get<bool>();
    v.iterations = e.at("iterations").get<std::size_t>();
    t.nodes.push_back(v);
  }
  return t;
}

}  // namespace kepmpc
