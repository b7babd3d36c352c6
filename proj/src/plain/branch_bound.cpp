#include "kepmpc/plain/branch_bound.hpp"

#include <deque>

namespace kepmpc {

PlainTableau fix_variable(const PlainTableau& t, std::size_t var, int value) {
  PlainTableau out = t;
  for (std::size_t k = 0; k < t.rows; ++k) {
    out.at(k, t.bound_col()) -= t.at(k, var) * value;
    out.at(k, var) = 0;
  }
  return out;
}

namespace {

struct Pending {
  PlainTableau tableau;
  BigInt bound_num;
  BigInt bound_den;
  std::vector<int> forced;  // Q
  int parent = 0;
  int value = -1;
};

}  // namespace

PlainBBResult plain_branch_and_bound(const PlainTableau& root, std::size_t structural, const BigInt& initial_bound,
                                     BranchPolicy policy) {
  if (structural > root.variables()) throw std::invalid_argument("more structural variables than columns");
  PlainBBResult res;
  res.x_star.assign(structural, 0);
  res.z_star = 0;

  std::deque<Pending> queue;
  queue.push_back({root, initial_bound, 1, std::vector<int>(structural, 0), 0, -1});
  while (!queue.empty()) {
    Pending p = std::move(queue.front());
    queue.pop_front();

    TreeNode node;
    node.id = static_cast<int>(res.trace.nodes.size()) + 1;
    node.parent = p.parent;
    node.branch_value = p.value;
    PlainNodeDetail detail;
    detail.bound_num = p.bound_num;
    detail.bound_den = p.bound_den;

    node.pruned = !(p.bound_num > res.z_star * p.bound_den);
    if (node.pruned) {
      res.trace.nodes.push_back(node);
      res.details.push_back(std::move(detail));
      continue;
    }

    const PlainLPResult lp = exact_simplex(p.tableau);
    node.iterations = lp.iterations;
    detail.solved = true;
    detail.z = lp.z;
    detail.d = lp.d;
    detail.x.resize(structural);
    std::optional<std::size_t> frac;
    for (std::size_t i = 0; i < structural; ++i) {
      detail.x[i] = lp.x[i] + lp.d * p.forced[i];
      if (!frac && detail.x[i] > 0 && detail.x[i] < lp.d) frac = i;
    }
    detail.integral = !frac;
    detail.branch_var = frac ? *frac + 1 : 0;

    const BigInt u = lp.z / lp.d;  // z >= 0, so this is the floor
    if (detail.integral && u > res.z_star) {
      res.z_star = u;
      for (std::size_t i = 0; i < structural; ++i) res.x_star[i] = static_cast<std::int64_t>(detail.x[i] / lp.d);
    }

    res.trace.nodes.push_back(node);
    res.details.push_back(std::move(detail));

    if (!frac && policy == BranchPolicy::kFractionalOnly) continue;
    for (int v : {1, 0}) {
      Pending child;
      child.parent = node.id;
      child.value = v;
      child.bound_num = lp.z;
      child.bound_den = lp.d;
      child.forced = p.forced;
      if (frac) {
        child.tableau = fix_variable(p.tableau, *frac, v);
        if (v == 1) child.forced[*frac] = 1;
      } else {
        child.tableau = p.tableau;
      }
      queue.push_back(std::move(child));
    }
  }
  return res;
}

}  // namespace kepmpc
