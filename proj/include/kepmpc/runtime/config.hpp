#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kepmpc/field/prime_field.hpp"
#include "kepmpc/field/shamir.hpp"
#include "kepmpc/kernels/kernels.hpp"

namespace kepmpc {

enum class TransportKind { kInProcess, kSocket };

TransportKind parse_transport(std::string_view name);
std::string_view to_string(TransportKind kind);

// Public parameters every peer of a session agrees on.
struct SessionConfig {
  int peers = 3;
  int threshold = 1;
  // s: bit length of signed values fed to comparisons.
  unsigned value_bits = 64;
  // Statistical security parameter for masked reveals.
  unsigned stat_security = 40;
  double latency_ms = 0.0;
  // 0 means unlimited.
  double bandwidth_bps = 0.0;
  // Adds each peer's thread CPU time between rounds to its simulated clock,
  // so local computation shows up next to network delay.
  bool charge_compute = false;
  TransportKind transport = TransportKind::kInProcess;
  std::uint64_t seed = 1;
  std::shared_ptr<const PrimeField> field = PrimeField::default_field();
  kernels::Mode kernel_mode = kernels::Mode::kSerial;
  // Enables debug assertions that open intermediate values under the
  // test-only label. Never set for leakage-audited runs.
  bool test_mode = false;

  SharingParams sharing() const { return {threshold, peers}; }

  // Throws std::invalid_argument when the parameters are inconsistent, e.g.
  // peers < 2*threshold+1 or a field too small for masked comparisons.
  void validate() const;
};

// Field bits required for comparisons on value_bits-bit inputs.
unsigned required_field_bits(const SessionConfig& cfg);

}  // namespace kepmpc
