// Harness that runs one protocol program on every peer of a session, each
// peer on its own thread, and collects outputs, transcript and traffic.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <memory>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "kepmpc/runtime/peer.hpp"

namespace kepmpc {

template <class Out>
struct RunResult {
  // outputs[i] is what party i+1 returned.
  std::vector<Out> outputs;
  Transcript transcript;
  std::vector<TrafficStats> traffic;
  // Slowest peer's simulated clock.
  double simulated_seconds = 0.0;
  double wall_seconds = 0.0;

  std::uint64_t max_bytes_sent() const {
    std::uint64_t m = 0;
    for (const auto& t : traffic) m = std::max(m, t.bytes_sent);
    return m;
  }
  std::uint64_t max_rounds() const {
    std::uint64_t m = 0;
    for (const auto& t : traffic) m = std::max(m, t.rounds);
    return m;
  }
};

namespace detail {

// Owns whichever network the session asked for.
class Network {
 public:
  explicit Network(const SessionConfig& cfg);
  std::unique_ptr<Transport> endpoint(PartyId id);
  void abort();

 private:
  std::unique_ptr<InProcessNetwork> inproc_;
  std::unique_ptr<SocketNetwork> socket_;
};

// Checks that all peers recorded the same opening events.
Transcript merge_transcripts(const std::vector<Transcript>& per_peer);

}  // namespace detail

// Shares values on behalf of the input peers: result[i] is party i+1's
// share vector. Values must fit cfg.value_bits signed bits.
std::vector<Shares> deal(const SessionConfig& cfg, const std::vector<BigInt>& values, Rng& rng);
std::vector<Shares> deal(const SessionConfig& cfg, const std::vector<std::int64_t>& values, Rng& rng);

// Reconstructs per-party output shares (as returned by run_protocol) into
// signed values, using all parties and checking consistency.
std::vector<BigInt> reveal(const SessionConfig& cfg, const std::vector<Shares>& outputs);
std::vector<std::int64_t> reveal_int(const SessionConfig& cfg, const std::vector<Shares>& outputs);

// Runs program(peer) for every party. The program must be the same on every
// peer; per-party inputs are captured by the program and indexed by
// peer.id(). Rethrows the first failure that is not a consequence of another
// peer aborting.
template <class Program>
auto run_protocol(const SessionConfig& cfg, Program&& program) -> RunResult<std::invoke_result_t<Program&, Peer&>> {
  using Out = std::invoke_result_t<Program&, Peer&>;
  cfg.validate();
  const int n = cfg.peers;
  detail::Network net(cfg);
  std::vector<std::optional<Out>> outs(n);
  std::vector<Transcript> transcripts(n);
  std::vector<TrafficStats> stats(n);
  std::vector<std::exception_ptr> errors(n);
  // The first peer to fail reports the root cause; failures after that are
  // usually consequences of the abort.
  std::atomic<int> first_failure{-1};

  const auto start = std::chrono::steady_clock::now();
  {
    std::vector<std::jthread> threads;
    threads.reserve(n);
    for (PartyId id = 1; id <= n; ++id) {
      threads.emplace_back([&, id] {
        try {
          Peer peer(cfg, id, net.endpoint(id));
          outs[id - 1].emplace(program(peer));
          transcripts[id - 1] = peer.transcript();
          stats[id - 1] = peer.stats();
        } catch (const AbortedError&) {
          errors[id - 1] = std::current_exception();
        } catch (...) {
          errors[id - 1] = std::current_exception();
          int none = -1;
          first_failure.compare_exchange_strong(none, id - 1);
          net.abort();
        }
      });
    }
  }
  const auto stop = std::chrono::steady_clock::now();

  if (first_failure >= 0) std::rethrow_exception(errors[first_failure]);
  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  RunResult<Out> r;
  r.outputs.reserve(n);
  for (auto& o : outs) r.outputs.push_back(std::move(*o));
  r.transcript = detail::merge_transcripts(transcripts);
  r.traffic = std::move(stats);
  for (const auto& s : r.traffic) r.simulated_seconds = std::max(r.simulated_seconds, s.simulated_seconds);
  r.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return r;
}

}  // namespace kepmpc
