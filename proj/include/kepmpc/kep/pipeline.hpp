// The kidney exchange protocol end to end: compatibility graph from shared
// medical quotes, oblivious shuffle, tableau setup, secure Branch-and-Bound,
// cycle resolution and output derivation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "kepmpc/kep/enumeration.hpp"
#include "kepmpc/kep/quote.hpp"
#include "kepmpc/pp/branch_bound.hpp"
#include "kepmpc/runtime/run.hpp"

namespace kepmpc::kep {

using mpc::ShareMatrix;

// One pair's quote as this peer's shares, vectors as in MedicalQuote.
struct SharedQuote {
  Shares donor_bloodtype;
  Shares donor_antigens;
  Shares patient_accepts;
  Shares patient_antibodies;
};

// Splits a peer's share vector dealt from MedicalQuote::flatten() of every
// pair in order.
std::vector<SharedQuote> unflatten(const Shares& flat, std::size_t pairs, std::size_t hla_length);

// [sum_k B^d(k) B^p(k) >= 1] * [sum_k A^d(k) A^p(k) = 0] for each
// (donors[k], patients[k]); one batch.
Shares comp_check(Peer& peer, const std::vector<const SharedQuote*>& donors,
                  const std::vector<const SharedQuote*>& patients);
FieldElement comp_check(Peer& peer, const SharedQuote& donor, const SharedQuote& patient);

// M(i, j) = comp_check(q_i, q_j) off the diagonal, 0 on it.
ShareMatrix build_adjacency(Peer& peer, const std::vector<SharedQuote>& quotes);

// This peer's share of a hidden permutation: for every (t+1)-member group
// it belongs to, that group's permutation (empty otherwise). The applied
// permutation is the composition over all groups, so no single peer knows it.
struct ShuffleKey {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> by_group;  // indexed like Peer::groups()
};

ShuffleKey draw_shuffle(Peer& peer, std::size_t size);
// M_pi(i, j) = M(pi(i), pi(j)). One resharing round per group.
ShareMatrix shuffle(Peer& peer, const ShareMatrix& m, const ShuffleKey& key);
// Applies pi^-1 to both dimensions, undoing shuffle with the same key.
ShareMatrix reverse_shuffle(Peer& peer, const ShareMatrix& m, const ShuffleKey& key);

// The composed permutation from every party's key (keys[i] of party i+1),
// as a simulator holding all views would see it.
std::vector<std::size_t> shuffle_permutation(const std::vector<ShuffleKey>& keys, const std::vector<unsigned>& groups);

struct Setup {
  ShareMatrix tableau;  // (pairs+1) x (|S| + pairs + 1)
  // |S| x max_orientations; row i is the unit indicator of the first
  // existing orientation of subset i (zero if none), zero-padded.
  ShareMatrix cycle_map;
};

Setup ip_setup(Peer& peer, const ShareMatrix& adjacency, const SubsetEnumeration& e);

// A(v, w) = 1 iff edge v -> w lies on a chosen cycle.
ShareMatrix resolve_cycles(Peer& peer, const Shares& x_star, const ShareMatrix& cycle_map,
                           const SubsetEnumeration& e);

struct DerivedOutput {
  Shares donor;      // D(i) = sum_j j A(j, i), 1-based, 0 = none
  Shares recipient;  // R(i) = sum_j j A(i, j)
};

DerivedOutput derive_output(const ShareMatrix& a);

struct KepParams {
  int max_cycle = 3;
  std::size_t iteration_cap = 0;
  // Test hooks. on_permutation gets pi as opened under the test-only label
  // (test mode only); on_setup sees the shuffled adjacency and tableau;
  // on_shuffle sees this peer's key without opening anything.
  std::function<void(Peer&, const std::vector<std::size_t>&)> on_permutation;
  std::function<void(Peer&, const ShuffleKey&)> on_shuffle;
  std::function<void(Peer&, const ShareMatrix&, const Setup&)> on_setup;
};

struct KepShares {
  DerivedOutput output;
  TreeTrace trace;
};

// Runs on every peer over the dealt quotes and releases D and R.
KepShares kep_ip(Peer& peer, const std::vector<SharedQuote>& quotes, const KepParams& params);

// Comparison width the protocol needs for `pairs` and `max_cycle`.
unsigned required_value_bits(int pairs, int max_cycle);

struct KepRun {
  std::vector<std::int64_t> donor;
  std::vector<std::int64_t> recipient;
  TreeTrace trace;
  Transcript transcript;
  std::vector<TrafficStats> traffic;
  double simulated_seconds = 0.0;
  double wall_seconds = 0.0;

  int transplants() const { return transplant_count(recipient); }
};

// Deals the quotes on behalf of the input peers, runs kep_ip and
// reconstructs the output. value_bits is raised if the instance needs more.
KepRun solve_kep(SessionConfig cfg, const std::vector<MedicalQuote>& quotes, const KepParams& params,
                 std::uint64_t dealer_seed);

nlohmann::json to_json(const KepRun& run);

}  // namespace kepmpc::kep
