// Public record of a protocol run: every value the peers opened, labelled
// with why it was opened, plus per-peer traffic accounting.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kepmpc/field/prime_field.hpp"

namespace kepmpc {

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed set of reasons a value may become public.
enum class OpenLabel : std::uint8_t {
  kPruneBit = 1,
  kSimplexTermination = 2,
  kFinalOutput = 3,
  kTestOnly = 4,
};

std::string_view to_string(OpenLabel label);
std::optional<OpenLabel> parse_label(std::string_view s);

struct OpeningEvent {
  OpenLabel label = OpenLabel::kTestOnly;
  // Signed decodings of the opened values. Final outputs are delivered to
  // input peers rather than opened, so they carry no values, only a count.
  std::vector<BigInt> values;
  std::size_t released = 0;

  bool operator==(const OpeningEvent&) const = default;
};

struct TrafficStats {
  std::uint64_t bytes_sent = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t rounds = 0;
  // Degree reductions performed (one per product or inner product).
  std::uint64_t multiplications = 0;
  // Reconstructions of uniformly or statistically masked values inside
  // primitives; they are not openings of protocol values.
  std::uint64_t masked_reveals = 0;
  // Thread CPU time spent between rounds.
  double compute_seconds = 0.0;
  double simulated_seconds = 0.0;
};

class Transcript {
 public:
  void record(OpeningEvent e) { events_.push_back(std::move(e)); }
  const std::vector<OpeningEvent>& events() const { return events_; }
  std::size_t count(OpenLabel label) const;
  // Values of all events with `label`, concatenated.
  std::vector<BigInt> values(OpenLabel label) const;
  bool operator==(const Transcript&) const = default;

 private:
  std::vector<OpeningEvent> events_;
};

nlohmann::json to_json(const OpeningEvent& e);
nlohmann::json to_json(const Transcript& t);
nlohmann::json to_json(const TrafficStats& s);

// Deterministic text form, used to compare runs byte for byte.
std::string serialize(const Transcript& t);

}  // namespace kepmpc
