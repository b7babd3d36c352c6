// Point-to-point links between computing peers. A transport endpoint moves
// one batch of field elements to every other peer per call; the caller
// (Peer::round) layers round accounting on top.

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "kepmpc/field/prime_field.hpp"
#include "kepmpc/field/shamir.hpp"

namespace kepmpc {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised in peers blocked on the network after another peer failed.
class AbortedError : public TransportError {
 public:
  AbortedError() : TransportError("protocol run aborted by another peer") {}
};

using Payload = std::vector<FieldElement>;

class Transport {
 public:
  virtual ~Transport() = default;
  // outgoing[j] goes to party j+1; the entry for this party is ignored.
  // Returns incoming[j] from party j+1 (empty for this party).
  virtual std::vector<Payload> exchange(std::vector<Payload> outgoing) = 0;
};

// Shared mailbox for peers running as threads of one process.
class InProcessNetwork {
 public:
  InProcessNetwork(int parties);
  std::unique_ptr<Transport> endpoint(PartyId id);
  void abort();

 private:
  friend class InProcessEndpoint;
  struct Mailbox {
    std::mutex mu;
    std::condition_variable cv;
    // queues[src] holds batches sent by party src+1.
    std::vector<std::deque<Payload>> queues;
  };
  int parties_;
  std::vector<std::unique_ptr<Mailbox>> boxes_;
  std::atomic<bool> aborted_{false};
};

// TCP over localhost: one duplex connection per peer pair, frames are a
// 4-byte big-endian length followed by canonical field element bytes.
class SocketNetwork {
 public:
  SocketNetwork(int parties, std::shared_ptr<const PrimeField> field);
  ~SocketNetwork();
  SocketNetwork(const SocketNetwork&) = delete;
  SocketNetwork& operator=(const SocketNetwork&) = delete;

  // Blocks until this party is connected to all others.
  std::unique_ptr<Transport> endpoint(PartyId id);
  void abort();
  std::uint16_t port(PartyId id) const { return ports_[id - 1]; }

 private:
  friend class SocketEndpoint;
  void register_fd(int fd);

  int parties_;
  std::shared_ptr<const PrimeField> field_;
  std::vector<int> listeners_;
  std::vector<std::uint16_t> ports_;
  std::mutex fds_mu_;
  std::vector<int> open_fds_;
  std::atomic<bool> aborted_{false};
};

// Frame helpers shared by the socket transport and its tests.
std::vector<std::uint8_t> encode_frame(const PrimeField& f, const Payload& p);
// Returns the payload length announced by a 4-byte big-endian header.
std::uint32_t decode_frame_length(const std::uint8_t* header);

}  // namespace kepmpc
