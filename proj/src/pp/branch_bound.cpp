#include "kepmpc/pp/branch_bound.hpp"

#include <bit>
#include <deque>
#include <stdexcept>

namespace kepmpc::pp {

namespace {

struct Pending {
  ShareMatrix t;
  FieldElement bound_num;
  FieldElement bound_den;
  Shares forced;  // Q
  int parent = 0;
  int value = -1;
};

}  // namespace

unsigned cap_bits(std::int64_t value_cap) {
  if (value_cap < 1) throw std::invalid_argument("value cap must be positive");
  return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(value_cap)));
}

bool prune_check(Peer& peer, const FieldElement& z_parent, const FieldElement& d_parent, const FieldElement& z_star,
                 const BBParams& params) {
  const FieldElement scaled = mpc::mul(peer, {z_star}, {d_parent})[0];
  // |z_p - z* d_p| <= K d_p < 2^(eb + bits(K)).
  const Shares t = mpc::positive(peer, {z_parent - scaled}, params.entry_bits + cap_bits(params.value_cap) + 1);
  return mpc::open(peer, t, OpenLabel::kPruneBit)[0].to_int64() == 1;
}

UpdateResult ip_update(Peer& peer, const Shares& x, const FieldElement& z, const FieldElement& d,
                       const FieldElement& d_inv, const Incumbent& incumbent, const BBParams& params) {
  const std::size_t s = x.size();
  const std::int64_t cap = params.value_cap;
  const unsigned kb = cap_bits(cap);

  // X (d - X) and the candidate incumbent X / d in one round.
  Shares lhs = x;
  Shares rhs;
  rhs.reserve(2 * s);
  for (const auto& v : x) rhs.push_back(d - v);
  lhs.insert(lhs.end(), x.begin(), x.end());
  rhs.insert(rhs.end(), s, d_inv);
  const Shares prod = mpc::mul(peer, lhs, rhs);
  const Shares spread(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(s));
  const Shares candidate(prod.begin() + static_cast<std::ptrdiff_t>(s), prod.end());

  // Fractional iff 0 < X < d, i.e. X (d - X) > 0 given 0 <= X <= d.
  const Shares g = mpc::positive(peer, spread, 2 * params.entry_bits);
  UpdateResult out;
  out.f = mpc::first_set(peer, g);

  // u = sum_k [z >= k d] = sum_k [z - k d + 1 > 0].
  Shares steps;
  steps.reserve(static_cast<std::size_t>(cap));
  for (std::int64_t k = 1; k <= cap; ++k) steps.push_back(z - d.times(k) + peer.constant(1));
  const Shares ge = mpc::positive(peer, steps, params.entry_bits + kb + 1);
  out.u = mpc::sum(ge);

  const FieldElement integral = peer.constant(1) - (s ? mpc::sum(out.f) : peer.field().zero());
  const FieldElement better = mpc::positive(peer, {out.u - incumbent.z}, kb + 1)[0];
  const FieldElement take = mpc::mul(peer, {integral}, {better})[0];

  Shares sel_b(s + 1, take);
  Shares sel_x = candidate;
  sel_x.push_back(out.u);
  Shares sel_y = incumbent.x;
  sel_y.push_back(incumbent.z);
  const Shares chosen = mpc::cond_select(peer, sel_b, sel_x, sel_y);
  out.incumbent.x.assign(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(s));
  out.incumbent.z = chosen[s];
  return out;
}

std::pair<ShareMatrix, ShareMatrix> ip_branch(Peer& peer, const ShareMatrix& t, const Shares& f) {
  const std::size_t s = f.size();
  if (s > t.cols - 1) throw std::invalid_argument("branch indicator longer than the variable count");
  const std::size_t rows = t.rows;
  const std::size_t bc = t.cols - 1;

  // D = T F over the structural columns.
  Shares xs;
  Shares ys;
  std::vector<std::size_t> offsets{0};
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < s; ++j) {
      xs.push_back(t.at(k, j));
      ys.push_back(f[j]);
    }
    offsets.push_back(xs.size());
  }
  const Shares dcol = mpc::dots(peer, xs, ys, offsets);

  Shares lhs;
  Shares rhs;
  lhs.reserve(rows * s);
  rhs.reserve(rows * s);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < s; ++j) {
      lhs.push_back(dcol[k]);
      rhs.push_back(f[j]);
    }
  }
  const Shares delta = mpc::mul(peer, lhs, rhs);

  ShareMatrix zero = t;
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < s; ++j) zero.at(k, j) -= delta[k * s + j];
  }
  ShareMatrix one = zero;
  for (std::size_t k = 0; k < rows; ++k) one.at(k, bc) -= dcol[k];
  return {std::move(one), std::move(zero)};
}

BBResult pp_branch_and_bound(Peer& peer, const ShareMatrix& root, const FieldElement& bound_num,
                             const BBParams& params) {
  const std::size_t s = params.structural;
  if (s == 0 || s > root.cols - 1) throw std::invalid_argument("structural variable count out of range");
  BBResult res;
  res.best.x = peer.constants(s, 0);
  res.best.z = peer.constant(0);

  SimplexParams sp;
  sp.entry_bits = params.entry_bits;
  sp.iteration_cap = params.iteration_cap;

  std::deque<Pending> queue;
  queue.push_back({root, bound_num, peer.constant(1), peer.constants(s, 0), 0, -1});
  while (!queue.empty()) {
    Pending p = std::move(queue.front());
    queue.pop_front();

    TreeNode node;
    node.id = static_cast<int>(res.trace.nodes.size()) + 1;
    node.parent = p.parent;
    node.branch_value = p.value;
    node.pruned = !prune_check(peer, p.bound_num, p.bound_den, res.best.z, params);
    if (node.pruned) {
      res.trace.nodes.push_back(node);
      continue;
    }

    const SimplexResult lp = pp_simplex(peer, p.t, sp);
    node.iterations = lp.iterations;
    res.trace.nodes.push_back(node);

    // X = X' + d Q over the structural variables.
    const Shares dq = mpc::mul(peer, Shares(s, lp.d), p.forced);
    Shares x(s);
    for (std::size_t i = 0; i < s; ++i) x[i] = lp.x[i] + dq[i];

    UpdateResult up = ip_update(peer, x, lp.z, lp.d, lp.d_inv, res.best, params);
    res.best = std::move(up.incumbent);
    if (params.on_node) params.on_node(peer, x, lp.z, lp.d, up.f);

    auto [one, zero] = ip_branch(peer, p.t, up.f);
    Shares forced_one = mpc::add(p.forced, up.f);
    queue.push_back({std::move(one), lp.z, lp.d, std::move(forced_one), node.id, 1});
    queue.push_back({std::move(zero), lp.z, lp.d, std::move(p.forced), node.id, 0});
  }
  return res;
}

}  // namespace kepmpc::pp
