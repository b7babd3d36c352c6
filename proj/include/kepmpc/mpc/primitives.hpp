// Protocol building blocks over Shamir shares. Every function is called by
// all peers with the same public arguments; batched versions process many
// independent instances in the rounds of one.

#pragma once

#include <cstddef>
#include <vector>

#include "kepmpc/runtime/peer.hpp"

namespace kepmpc::mpc {

// Row-major matrix of this peer's shares.
struct ShareMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Shares data;

  ShareMatrix() = default;
  ShareMatrix(std::size_t r, std::size_t c, const FieldElement& fill) : rows(r), cols(c), data(r * c, fill) {}

  FieldElement& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const FieldElement& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  Shares row(std::size_t i) const;
  Shares column(std::size_t j) const;
};

// ---- linear, local ----

Shares add(const Shares& x, const Shares& y);
Shares sub(const Shares& x, const Shares& y);
Shares scale(const FieldElement& a, const Shares& x);
// a*x + b*y elementwise.
Shares linear(const FieldElement& a, const Shares& x, const FieldElement& b, const Shares& y);
FieldElement sum(const Shares& x);

// ---- interactive ----

// Degree reduction: h holds this peer's evaluations of degree-2t products
// (or sums of them); returns fresh degree-t shares. One round.
Shares reduce(Peer& peer, const Shares& h);

Shares mul(Peer& peer, const Shares& x, const Shares& y);
// out[k] = sum over [offsets[k], offsets[k+1]) of x[i]*y[i]; one resharing per output.
Shares dots(Peer& peer, const Shares& x, const Shares& y, const std::vector<std::size_t>& offsets);

// b ? x : y, computed as b*(x-y)+y.
Shares cond_select(Peer& peer, const Shares& b, const Shares& x, const Shares& y);

// Opens values to all peers under `label` and appends the event to the
// transcript. Throws ConsistencyError if shares or labels disagree.
std::vector<FieldElement> open(Peer& peer, const Shares& x, OpenLabel label);
// Reconstructs values that are uniformly or statistically masked inside a
// primitive. Counted in TrafficStats::masked_reveals, not in the transcript.
std::vector<FieldElement> reveal_masked(Peer& peer, const Shares& x);
// Records that `count` output shares are handed to the input peers.
void release_output(Peer& peer, std::size_t count);

Shares random_bits(Peer& peer, std::size_t n);

// Multiplicative inverses of nonzero secrets.
Shares inverse(Peer& peer, const Shares& x);

// ---- comparison ----

// [a < 0] for |a| < 2^(k-1).
Shares less_than_zero(Peer& peer, const Shares& a, unsigned k);
// [x > 0] for |x| < 2^bits.
Shares positive(Peer& peer, const Shares& x, unsigned bits);
// [x > y] for |x|, |y| < 2^bits.
Shares greater_than(Peer& peer, const Shares& x, const Shares& y, unsigned bits);

// Prefix OR within each segment [offsets[k], offsets[k+1]) of bit shares.
Shares prefix_or(Peer& peer, const Shares& bits, const std::vector<std::size_t>& offsets);
Shares prefix_or(Peer& peer, const Shares& bits);
// Unit indicator of the first set bit in each segment (zero if none).
Shares first_set(Peer& peer, const Shares& bits, const std::vector<std::size_t>& offsets);
Shares first_set(Peer& peer, const Shares& bits);
// Unit indicator of the first entry greater than zero; |u| < 2^bits.
Shares sel_min(Peer& peer, const Shares& u, unsigned bits);

}  // namespace kepmpc::mpc
