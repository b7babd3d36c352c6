#include "kepmpc/runtime/config.hpp"

#include <bit>

namespace kepmpc {

TransportKind parse_transport(std::string_view name) {
  if (name == "inproc") return TransportKind::kInProcess;
  if (name == "socket") return TransportKind::kSocket;
  throw std::invalid_argument("unknown transport '" + std::string(name) + "' (expected inproc|socket)");
}

std::string_view to_string(TransportKind kind) {
  return kind == TransportKind::kSocket ? "socket" : "inproc";
}

unsigned required_field_bits(const SessionConfig& cfg) {
  // Comparing two s-bit values masks an (s+2)-bit difference with
  // (s+2+sec)-bit randomness summed over at most 2^peers key holders.
  return cfg.value_bits + 2 + cfg.stat_security + static_cast<unsigned>(cfg.peers) + 2;
}

void SessionConfig::validate() const {
  if (threshold < 1) throw std::invalid_argument("threshold must be at least 1");
  if (peers < 2 * threshold + 1) {
    throw std::invalid_argument("need peers >= 2*threshold+1 for multiplication (peers=" + std::to_string(peers) +
                                ", threshold=" + std::to_string(threshold) + ")");
  }
  if (peers > 16) throw std::invalid_argument("at most 16 peers are supported");
  if (latency_ms < 0) throw std::invalid_argument("latency must be non-negative");
  if (bandwidth_bps < 0) throw std::invalid_argument("bandwidth must be non-negative");
  if (!field) throw std::invalid_argument("session has no field");
  if (field->bits() < required_field_bits(*this)) {
    throw std::invalid_argument("field of " + std::to_string(field->bits()) + " bits is too small for " +
                                std::to_string(value_bits) + "-bit comparisons (need " +
                                std::to_string(required_field_bits(*this)) + ")");
  }
}

}  // namespace kepmpc
