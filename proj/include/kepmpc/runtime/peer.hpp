// One computing peer: its link to the others, its local randomness, the
// correlated randomness it shares with subsets of peers, and the accounting
// of rounds, bytes and opened values.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "kepmpc/field/prime_field.hpp"
#include "kepmpc/field/shamir.hpp"
#include "kepmpc/runtime/config.hpp"
#include "kepmpc/runtime/transcript.hpp"
#include "kepmpc/runtime/transport.hpp"

namespace kepmpc {

// This peer's shares of a vector of secrets.
using Shares = std::vector<FieldElement>;

class Peer {
 public:
  // Runs the session-start seed exchange; its traffic is not counted.
  Peer(const SessionConfig& cfg, PartyId id, std::unique_ptr<Transport> link);

  PartyId id() const { return id_; }
  int parties() const { return cfg_.peers; }
  int threshold() const { return cfg_.threshold; }
  const SessionConfig& config() const { return cfg_; }
  const PrimeField& field() const { return *cfg_.field; }
  kernels::Mode kernel_mode() const { return cfg_.kernel_mode; }

  FieldElement constant(std::int64_t v) const { return cfg_.field->from_int(v); }
  Shares constants(std::size_t n, std::int64_t v) const { return Shares(n, constant(v)); }

  // Sends outgoing[j] to party j+1 and returns what each party sent here.
  // Counts a round only when something was sent or received.
  std::vector<Payload> round(std::vector<Payload> outgoing);

  // Randomness private to this peer.
  Rng& local_rng() { return local_rng_; }

  // Non-interactive shares of independent uniform field elements.
  Shares random_elements(std::size_t n);
  // Non-interactive shares of integers in [0, keys * 2^bits), keys being the
  // number of key subsets; used as statistical masks.
  Shares random_bounded(std::size_t n, unsigned bits);
  // Per key subset, shares of n independent uniform bits chosen by that
  // subset; their XOR is a bit unknown to any t peers.
  std::vector<Shares> random_bit_parts(std::size_t n);
  // Number of key subsets backing the pseudo-random sharing (all of them,
  // not only those this peer belongs to).
  std::size_t key_subsets() const { return prss_keys_.size(); }

  // Generator known exactly to the members of `subset` (bit i-1 set for
  // party i); this peer must be a member and the subset must have t+1
  // members.
  Rng& group_rng(unsigned subset);
  // All (t+1)-member subsets in increasing order of their bit mask.
  const std::vector<unsigned>& groups() const { return groups_; }

  // Lagrange coefficients recombining evaluations at all parties to zero;
  // for the points 1..n they are the integers (-1)^(j+1) C(n, j).
  const std::vector<std::int64_t>& recombination() const { return lambda_all_; }

  // Reconstructs each value from the shares of all peers after checking
  // that every peer's share lies on one degree-t polynomial.
  std::vector<FieldElement> reconstruct_all(const std::vector<Payload>& incoming, const Shares& mine,
                                            std::size_t count) const;

  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }
  TrafficStats& stats() { return stats_; }
  const TrafficStats& stats() const { return stats_; }

 private:
  void exchange_seeds();

  SessionConfig cfg_;
  PartyId id_;
  std::unique_ptr<Transport> link_;
  Rng local_rng_;
  struct PrssKey {
    unsigned subset;
    bool member;
    FieldElement weight;  // f_A(id): 1 at zero, 0 at parties outside A
    Rng rng;
  };
  std::vector<PrssKey> prss_keys_;
  std::vector<unsigned> groups_;
  std::map<unsigned, Rng> group_rngs_;
  std::vector<std::int64_t> lambda_all_;
  std::vector<FieldElement> lambda_first_;
  // check_[j][i]: weight of share i (first t+1 parties) in the evaluation at party j.
  std::vector<std::vector<FieldElement>> check_;
  Transcript transcript_;
  TrafficStats stats_;
  double cpu_mark_ = 0.0;
};

}  // namespace kepmpc
